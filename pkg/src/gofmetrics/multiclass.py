"""Multi-class goodness-of-fit scores over a confusion matrix.

The centerpiece is `generalized_mcc`: the determinant of the geometric
normalized confusion matrix.  Its magnitude is the volume of the
parallelepiped spanned by that matrix's rows, which is at most 1 and
reaches 1 only when the rows form a permutation matrix, i.e. when the
classifier is perfect up to a relabeling of its outputs
(`perfect_fit_permutation` recovers that relabeling).

The rest of the family: per-class F1 / Fowlkes-Mallows rolled up by a
caller-chosen average, the chi-square association score `cramers_phi`,
pairwise one-vs-one averages of any two-class score, and a power mean of
the 2n diagonal rates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import binary as _binary
from .confusion import (
    ConfusionMatrix,
    col_conditional,
    normalized_matrix,
    restrict_to_pair,
    row_conditional,
)
from .means import (
    ARITHMETIC,
    AverageKind,
    AveragingSpec,
    apply_average,
    geometric_mean,
    harmonic_mean,
    power_mean,
)

__all__ = [
    "MetricScore",
    "PermutationWitness",
    "generalized_mcc",
    "generalized_f1",
    "generalized_fm",
    "cramers_phi",
    "one_vs_one_average",
    "lp_multiclass",
    "perfect_fit_permutation",
    "BINARY_METRIC_NAMES",
]

# rounding slack allowed on the |det| <= 1 bound before clamping
_DET_SLACK = 1e-10


@dataclass(frozen=True)
class MetricScore:
    """One evaluated metric: id, value, and the parameters that shaped it."""

    metric_id: str
    value: float
    parameters: dict[str, str] = field(default_factory=dict)
    n_classes: int = 0


@dataclass(frozen=True)
class PermutationWitness:
    """The output relabeling that turns a matrix into a perfect fit.

    mapping[j] = i means everything predicted as class j truly belongs to
    class i; parity is the sign of that permutation.
    """

    mapping: tuple[int, ...]
    parity: str  # "even" | "odd"


def _det_pivoted(matrix: np.ndarray) -> float:
    """Determinant by Gaussian elimination with partial pivoting.

    Returns exact 0.0 on a structurally singular matrix (a pivot column
    with no nonzero entry), which matters for the zero-column bias case.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    sign = 1.0
    det = 1.0
    for k in range(n):
        pivot = k + int(np.argmax(np.abs(a[k:, k])))
        if a[pivot, k] == 0.0:
            return 0.0
        if pivot != k:
            a[[k, pivot]] = a[[pivot, k]]
            sign = -sign
        det *= a[k, k]
        if k + 1 < n:
            factors = a[k + 1 :, k] / a[k, k]
            a[k + 1 :, k:] -= np.outer(factors, a[k, k:])
    return sign * det


def generalized_mcc(cm: ConfusionMatrix) -> float:
    """Determinant of the geometric normalized confusion matrix, in [-1, 1].

    1 means perfect prediction up to class order, -1 perfect up to an odd
    relabeling, 0 means some class is never predicted (or the rows are
    otherwise linearly dependent).  At n = 2 this equals the classic
    two-class Matthews correlation coefficient.
    """
    norm = normalized_matrix(cm)
    det = _det_pivoted(norm.values)
    # the mathematical bound is exact; anything past rounding slack is a bug
    assert abs(det) <= 1.0 + _DET_SLACK, f"determinant {det} outside [-1, 1]"
    return min(1.0, max(-1.0, det))


def _diagonal_pairs(cm: ConfusionMatrix) -> list[tuple[float, float]]:
    return [
        (row_conditional(cm, i, i), col_conditional(cm, i, i)) for i in range(cm.n)
    ]


def _check_outer(outer: AveragingSpec) -> None:
    # outer aggregation must be a strictly monotone mean: the named trio or
    # a power mean with p <= 1
    if outer.kind in (AverageKind.HARMONIC, AverageKind.GEOMETRIC, AverageKind.ARITHMETIC):
        return
    if outer.kind is AverageKind.POWER:
        if outer.p <= 1:
            return
        raise ValueError(f"invalid outer spec: p must be <= 1, got {outer.p}")
    raise ValueError(f"invalid outer spec: {outer.to_string()}")


def generalized_f1(cm: ConfusionMatrix, outer: AveragingSpec = ARITHMETIC) -> float:
    """Outer average of per-class F1 values.

    Class i's F1 is the harmonic mean of its two diagonal rates, the share
    of predicted-i that is truly i and the share of true-i predicted as i.
    """
    _check_outer(outer)
    per_class = tuple(harmonic_mean(pair) for pair in _diagonal_pairs(cm))
    return apply_average(outer, per_class)


def generalized_fm(cm: ConfusionMatrix, outer: AveragingSpec = ARITHMETIC) -> float:
    """Outer average of per-class Fowlkes-Mallows values.

    Same as `generalized_f1` with the inner harmonic mean replaced by the
    geometric mean; equivalently an outer average of the diagonal of the
    geometric normalized matrix.  Dominates generalized_f1 for a matching
    outer because G >= H entrywise.
    """
    _check_outer(outer)
    per_class = tuple(geometric_mean(pair) for pair in _diagonal_pairs(cm))
    return apply_average(outer, per_class)


def cramers_phi(cm: ConfusionMatrix) -> float:
    """Chi-square association between truth and prediction, scaled to [0, 1].

        phi_c = sqrt( (chi2 / N) / (n - 1) )

    Cells with zero expected count contribute zero to chi2 (their observed
    count is necessarily zero too).  At n = 2 this equals |mcc_binary|.
    """
    counts = cm.counts
    total = counts.sum()
    expected = np.outer(cm.row_sums, cm.col_sums) / total
    mask = expected > 0
    chi2 = float(
        (((counts - expected) ** 2)[mask] / expected[mask]).sum()
    )
    phi = math.sqrt((chi2 / total) / (cm.n - 1))
    return min(1.0, phi)


@dataclass(frozen=True)
class _BinaryMetricInfo:
    func: Callable
    signed: bool  # range includes negatives (correlation-style)
    swap_invariant: bool  # unchanged when positive/negative roles swap
    needs_p: bool = False


_BINARY_METRICS: dict[str, _BinaryMetricInfo] = {
    "precision": _BinaryMetricInfo(_binary.precision, False, False),
    "sensitivity": _BinaryMetricInfo(_binary.sensitivity, False, False),
    "specificity": _BinaryMetricInfo(_binary.specificity, False, False),
    "npv": _BinaryMetricInfo(_binary.npv, False, False),
    "f1": _BinaryMetricInfo(_binary.f1_binary, False, False),
    "f1_zero": _BinaryMetricInfo(_binary.f1_zero_binary, False, False),
    "fowlkes_mallows": _BinaryMetricInfo(_binary.fowlkes_mallows_binary, False, False),
    "mcc": _BinaryMetricInfo(_binary.mcc_binary, True, True),
    "lp_four_rate": _BinaryMetricInfo(_binary.lp_four_rate_score, False, True, needs_p=True),
}

BINARY_METRIC_NAMES = tuple(_BINARY_METRICS)


def _signed_outer(outer: AveragingSpec, values: list[float]) -> float:
    # means from the power family reject negative inputs, so a signed
    # metric only admits these three aggregations
    if outer.kind is AverageKind.ARITHMETIC:
        return sum(values) / len(values)
    if outer.kind is AverageKind.MIN:
        return float(min(values))
    if outer.kind is AverageKind.MAX:
        return float(max(values))
    raise ValueError(
        "average undefined on negative values: "
        f"{outer.to_string()} outer cannot aggregate a signed metric"
    )


def one_vs_one_average(
    cm: ConfusionMatrix,
    metric: str,
    outer: AveragingSpec = ARITHMETIC,
    p: float | None = None,
) -> MetricScore:
    """Evaluate a two-class metric on every class pair and average.

    Each unordered pair (i, j), i < j, is restricted to its 2x2 sub-table.
    Metrics that depend on which class is called positive are evaluated in
    both orientations and combined with the same outer average before the
    cross-pair aggregation, so the composite never depends on class order.
    Signed metrics (mcc) admit only arithmetic / min / max outers.
    """
    try:
        info = _BINARY_METRICS[metric]
    except KeyError:
        raise ValueError(
            f"unknown binary metric {metric!r}; choose from {', '.join(BINARY_METRIC_NAMES)}"
        ) from None
    if info.needs_p:
        if p is None:
            raise ValueError(f"{metric} needs an exponent p")
        if math.isnan(p):
            raise ValueError("NaN exponent")
        if p > 1:
            raise ValueError(f"p must be <= 1, got {p}")
    elif p is not None:
        raise ValueError(f"{metric} takes no exponent")

    if info.signed:
        # validate eagerly so a bad outer fails before any computation
        _signed_outer(outer, [0.0])
    else:
        _check_outer(outer)

    if info.needs_p:
        evaluate = lambda view: info.func(view, p)
    else:
        evaluate = info.func

    values = []
    for i in range(cm.n):
        for j in range(i + 1, cm.n):
            view = _binary.BinaryView(restrict_to_pair(cm, i, j))
            if info.swap_invariant:
                values.append(evaluate(view))
            else:
                both = (evaluate(view), evaluate(view.swapped()))
                values.append(
                    _signed_outer(outer, list(both))
                    if info.signed
                    else apply_average(outer, both)
                )

    value = _signed_outer(outer, values) if info.signed else apply_average(outer, values)
    parameters = {"outer": outer.to_string()}
    if info.needs_p:
        parameters["p"] = repr(float(p))
    return MetricScore(f"one_vs_one_{metric}", value, parameters, cm.n)


def lp_multiclass(cm: ConfusionMatrix, p: float) -> float:
    """Power mean of the 2n diagonal rates (per-class precision and recall).

    p <= 1 (with -inf meaning the worst rate): exponents past 1 would
    reward lopsided class performance instead of penalizing it.
    """
    if math.isnan(p):
        raise ValueError("NaN exponent")
    if p > 1:
        raise ValueError(f"p must be <= 1, got {p}")
    rates = tuple(col_conditional(cm, i, i) for i in range(cm.n)) + tuple(
        row_conditional(cm, j, j) for j in range(cm.n)
    )
    return power_mean(rates, p)


def _parity(mapping: tuple[int, ...]) -> str:
    # sign via cycle decomposition: (-1) ** (n - number_of_cycles)
    n = len(mapping)
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = mapping[k]
    return "even" if (n - cycles) % 2 == 0 else "odd"


def perfect_fit_permutation(cm: ConfusionMatrix) -> PermutationWitness | None:
    """Recover the relabeling behind a perfect-up-to-permutation fit.

    Returns a witness when every row and column holds exactly one positive
    cell (so the normalized matrix is exactly a permutation matrix), else
    None.  Whenever |generalized_mcc| is exactly 1, a witness exists.
    """
    counts = cm.counts
    n = cm.n
    mapping = []
    for j in range(n):
        nonzero = np.flatnonzero(counts[:, j] > 0)
        if len(nonzero) != 1:
            return None
        mapping.append(int(nonzero[0]))
    if sorted(mapping) != list(range(n)):
        return None
    mapping = tuple(mapping)
    return PermutationWitness(mapping, _parity(mapping))
