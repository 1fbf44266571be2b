"""Two-class rates and scores over a 2x2 confusion matrix.

A `BinaryView` fixes which of the two classes counts as positive; the four
cells are then

    TP = counts[pos][pos]   FN = counts[pos][neg]
    FP = counts[neg][pos]   TN = counts[neg][neg]

All rate functions use the 0-on-degenerate convention: when a denominator
is zero the rate is 0.0 rather than an error, so the scores stay total on
every non-empty table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .confusion import ConfusionMatrix
from .means import harmonic_mean, power_mean

__all__ = [
    "BinaryView",
    "precision",
    "sensitivity",
    "specificity",
    "npv",
    "f1_binary",
    "f1_zero_binary",
    "fowlkes_mallows_binary",
    "mcc_binary",
    "lp_four_rate_score",
]


@dataclass(frozen=True)
class BinaryView:
    """A 2x2 confusion matrix with one class marked positive."""

    cm: ConfusionMatrix
    positive_index: int = 0

    def __post_init__(self) -> None:
        if self.cm.n != 2:
            raise ValueError(f"binary view needs a 2x2 matrix, got {self.cm.n}x{self.cm.n}")
        if self.positive_index not in (0, 1):
            raise ValueError("positive_index must be 0 or 1")

    @property
    def _neg(self) -> int:
        return 1 - self.positive_index

    @property
    def tp(self) -> float:
        return float(self.cm.counts[self.positive_index, self.positive_index])

    @property
    def fn(self) -> float:
        return float(self.cm.counts[self.positive_index, self._neg])

    @property
    def fp(self) -> float:
        return float(self.cm.counts[self._neg, self.positive_index])

    @property
    def tn(self) -> float:
        return float(self.cm.counts[self._neg, self._neg])

    def swapped(self) -> "BinaryView":
        """The same table with the other class as positive."""
        return BinaryView(self.cm, self._neg)


def _rate(num: float, denom: float) -> float:
    if denom == 0:
        return 0.0
    return num / denom


def precision(view: BinaryView) -> float:
    """TP / (TP + FP): how often a positive call is right."""
    return _rate(view.tp, view.tp + view.fp)


def sensitivity(view: BinaryView) -> float:
    """TP / (TP + FN): how much of the positive class is recovered."""
    return _rate(view.tp, view.tp + view.fn)


def specificity(view: BinaryView) -> float:
    """TN / (TN + FP): sensitivity of the negative class."""
    return _rate(view.tn, view.tn + view.fp)


def npv(view: BinaryView) -> float:
    """TN / (TN + FN): precision of the negative class."""
    return _rate(view.tn, view.tn + view.fn)


def f1_binary(view: BinaryView) -> float:
    """Harmonic mean of precision and sensitivity."""
    return harmonic_mean((precision(view), sensitivity(view)))


def f1_zero_binary(view: BinaryView) -> float:
    """Harmonic mean of specificity and npv: the F1 of the negative class."""
    return harmonic_mean((specificity(view), npv(view)))


def fowlkes_mallows_binary(view: BinaryView) -> float:
    """Geometric mean of precision and sensitivity."""
    p = precision(view)
    s = sensitivity(view)
    return math.sqrt(p * s)


def mcc_binary(view: BinaryView) -> float:
    """Matthews correlation coefficient.

        (TP*TN - FP*FN) / sqrt((TP+FP)(TP+FN)(TN+FN)(TN+FP))

    Equals the Pearson correlation of the two 0/1 indicator vectors.
    Returns 0.0 when any marginal is zero (a constant indicator has no
    correlation).  Range [-1, 1].
    """
    tp, fn, fp, tn = view.tp, view.fn, view.fp, view.tn
    denom = (tp + fp) * (tp + fn) * (tn + fn) * (tn + fp)
    if denom == 0:
        return 0.0
    return (tp * tn - fp * fn) / math.sqrt(denom)


def lp_four_rate_score(view: BinaryView, p: float) -> float:
    """Power mean of (sensitivity, specificity, precision, npv).

    p must be <= 1 (-inf allowed): at p = 1 this is already the plain
    arithmetic mean of the four rates, and larger exponents would reward
    imbalance between them instead of penalizing it.
    """
    if math.isnan(p):
        raise ValueError("NaN exponent")
    if p > 1:
        raise ValueError(f"p must be <= 1, got {p}")
    rates = (sensitivity(view), specificity(view), precision(view), npv(view))
    return power_mean(rates, p)
