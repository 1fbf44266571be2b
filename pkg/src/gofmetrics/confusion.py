"""Confusion-matrix construction, validation, and structural transforms.

Rows index the true class, columns the predicted class, in the order given
by `labels`.  Counts are stored as a read-only float64 array so smoothed
(fractional) tables and raw integer tallies share one representation.

`normalized_matrix` builds the per-cell average of the two conditional
rates P(true i | predicted j) and P(predicted j | true i); with the
geometric average its entries are

    N[i][j] = C[i][j] / sqrt(row_sum(i) * col_sum(j))

which is the matrix whose determinant the multiclass module turns into a
correlation-style score.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .means import GEOMETRIC, AveragingSpec, apply_average

__all__ = [
    "ConfusionMatrix",
    "NormalizedConfusionMatrix",
    "SmoothingSpec",
    "smooth",
    "row_conditional",
    "col_conditional",
    "normalized_matrix",
    "transpose",
    "relabel",
    "restrict_to_pair",
]


@dataclass(frozen=True)
class SmoothingSpec:
    """Additive pseudo-count: alpha is added to every cell."""

    alpha: float = 0.0

    def __post_init__(self) -> None:
        if not np.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")


@dataclass(frozen=True)
class ConfusionMatrix:
    """A square table of class-vs-class counts with its label order.

    Attributes:
        labels: class names, one per row/column, all distinct.
        counts: (n, n) float64 array, counts[i][j] = number of samples of
            true class i that were predicted as class j.  Read-only.
    """

    labels: tuple[str, ...]
    counts: np.ndarray

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @cached_property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> float:
        return float(self.counts.sum())

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r}") from None

    @classmethod
    def from_counts(
        cls,
        grid: Sequence[Sequence[float]] | np.ndarray,
        labels: Sequence[str] | None = None,
    ) -> "ConfusionMatrix":
        """Validate a square grid of non-negative cell values.

        Labels default to class_0 ... class_{n-1}.  Cells may be fractional
        (smoothing produces such tables); they must be finite, non-negative,
        and not all zero.
        """
        try:
            counts = np.asarray(grid, dtype=float)
        except (ValueError, TypeError):
            raise ValueError("non-square grid: rows have unequal lengths") from None
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ValueError(f"non-square grid: shape {counts.shape}")
        side = counts.shape[0]
        if side < 2:
            raise ValueError(f"n < 2: need at least two classes, got {side}")
        if labels is None:
            labels = tuple(f"class_{i}" for i in range(side))
        else:
            labels = tuple(str(lab) for lab in labels)
        if len(labels) != side:
            raise ValueError(
                f"label count {len(labels)} does not match grid side {side}"
            )
        if len(set(labels)) != side:
            raise ValueError("duplicate labels")
        bad = ~np.isfinite(counts)
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise ValueError(f"non-finite cell at row {i}, column {j}")
        neg = counts < 0
        if neg.any():
            i, j = map(int, np.argwhere(neg)[0])
            raise ValueError(
                f"negative cell at row {i}, column {j}: {counts[i, j]}"
            )
        if counts.sum() == 0:
            raise ValueError("all cells are zero")
        counts = counts.copy()
        counts.setflags(write=False)
        return cls(labels, counts)

    @classmethod
    def from_label_pairs(
        cls,
        true_labels: Iterable[object],
        predicted_labels: Iterable[object],
    ) -> "ConfusionMatrix":
        """Tally paired (true, predicted) label sequences.

        The class set is the sorted union of the labels seen on either side,
        so a class that is never predicted still gets a column and vice versa.
        """
        truths = [str(x) for x in true_labels]
        preds = [str(x) for x in predicted_labels]
        if len(truths) != len(preds):
            raise ValueError(
                f"length mismatch: {len(truths)} true labels "
                f"vs {len(preds)} predicted"
            )
        if not truths:
            raise ValueError("empty label sequences")
        labels = tuple(sorted(set(truths) | set(preds)))
        index = {lab: i for i, lab in enumerate(labels)}
        counts = np.zeros((len(labels), len(labels)))
        for t, p in zip(truths, preds):
            counts[index[t], index[p]] += 1.0
        return cls.from_counts(counts, labels)


@dataclass(frozen=True)
class NormalizedConfusionMatrix:
    """Per-cell average of the two conditional rates of a ConfusionMatrix."""

    values: np.ndarray
    averaging: AveragingSpec

    @property
    def n(self) -> int:
        return self.values.shape[0]


def smooth(cm: ConfusionMatrix, spec: SmoothingSpec) -> ConfusionMatrix:
    """Add spec.alpha to every cell; alpha = 0 returns cm unchanged."""
    if spec.alpha == 0:
        return cm
    return ConfusionMatrix.from_counts(cm.counts + spec.alpha, cm.labels)


def _check_index(cm: ConfusionMatrix, idx: int) -> None:
    if not 0 <= idx < cm.n:
        raise IndexError(f"class index {idx} out of range for {cm.n} classes")


def row_conditional(cm: ConfusionMatrix, i: int, j: int) -> float:
    """P(predicted j | true i); 0.0 when class i has no samples."""
    _check_index(cm, i)
    _check_index(cm, j)
    denom = cm.row_sums[i]
    if denom == 0:
        return 0.0
    return float(cm.counts[i, j] / denom)


def col_conditional(cm: ConfusionMatrix, i: int, j: int) -> float:
    """P(true i | predicted j); 0.0 when class j is never predicted."""
    _check_index(cm, i)
    _check_index(cm, j)
    denom = cm.col_sums[j]
    if denom == 0:
        return 0.0
    return float(cm.counts[i, j] / denom)


def normalized_matrix(
    cm: ConfusionMatrix, averaging: AveragingSpec = GEOMETRIC
) -> NormalizedConfusionMatrix:
    """Average the column- and row-conditional rate in every cell.

    Entries lie in [0, 1].  The construction is symmetric in the two rates,
    so transposing the counts transposes the result exactly, and scaling
    every count by a common positive factor leaves it unchanged.
    """
    n = cm.n
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            values[i, j] = apply_average(
                averaging, (col_conditional(cm, i, j), row_conditional(cm, i, j))
            )
    values.setflags(write=False)
    return NormalizedConfusionMatrix(values, averaging)


def _wrap(labels: tuple[str, ...], counts: np.ndarray) -> ConfusionMatrix:
    # internal constructor for transforms of an already-validated matrix
    counts = np.ascontiguousarray(counts)
    counts.setflags(write=False)
    return ConfusionMatrix(labels, counts)


def transpose(cm: ConfusionMatrix) -> ConfusionMatrix:
    """Swap the roles of true and predicted class."""
    return _wrap(cm.labels, cm.counts.T.copy())


def relabel(cm: ConfusionMatrix, permutation: Sequence[int]) -> ConfusionMatrix:
    """Reorder classes: new position k holds old class permutation[k].

    Rows and columns move together, so the table still describes the same
    classifier; only the presentation order changes.
    """
    perm = [int(x) for x in permutation]
    if sorted(perm) != list(range(cm.n)):
        raise ValueError(
            f"permutation must be a bijection on 0..{cm.n - 1}, got {perm}"
        )
    new_labels = tuple(cm.labels[k] for k in perm)
    new_counts = cm.counts[np.ix_(perm, perm)]
    return _wrap(new_labels, new_counts)


def restrict_to_pair(cm: ConfusionMatrix, i: int, j: int) -> ConfusionMatrix:
    """The 2x2 sub-table for classes i and j only, in that order.

    Row/column order in the result is (i, j); samples involving any other
    class are dropped.  The restriction may be all zero when neither class
    occurs, in which case every rate on it is 0 by the usual conventions.
    """
    _check_index(cm, i)
    _check_index(cm, j)
    if i == j:
        raise ValueError("pair restriction needs two distinct classes")
    idx = [i, j]
    sub = cm.counts[np.ix_(idx, idx)]
    return _wrap((cm.labels[i], cm.labels[j]), sub)
