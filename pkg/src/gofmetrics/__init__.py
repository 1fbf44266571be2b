"""Goodness-of-fit metrics for multi-class classifiers.

Build a `ConfusionMatrix` from a count grid or from paired label
sequences, then score it:

    >>> import gofmetrics as gm
    >>> cm = gm.ConfusionMatrix.from_counts([[20, 6, 0], [2, 20, 0], [12, 12, 8]])
    >>> round(gm.generalized_mcc(cm), 6)
    0.225669

`generalized_mcc` extends the two-class Matthews correlation coefficient
to n classes as the determinant of the normalized confusion matrix; the
other scores (generalized F1 / Fowlkes-Mallows, Cramer's phi, one-vs-one
averages, power-mean rates) share the same matrix plumbing.
"""

from .binary import (
    BinaryView,
    f1_binary,
    f1_zero_binary,
    fowlkes_mallows_binary,
    lp_four_rate_score,
    mcc_binary,
    npv,
    precision,
    sensitivity,
    specificity,
)
from .confusion import (
    ConfusionMatrix,
    NormalizedConfusionMatrix,
    SmoothingSpec,
    col_conditional,
    normalized_matrix,
    relabel,
    restrict_to_pair,
    row_conditional,
    smooth,
    transpose,
)
from .means import (
    ARITHMETIC,
    GEOMETRIC,
    HARMONIC,
    MAX,
    MIN,
    AverageKind,
    AveragingSpec,
    apply_average,
    arithmetic_mean,
    geometric_mean,
    harmonic_mean,
    power_mean,
)
from .multiclass import (
    BINARY_METRIC_NAMES,
    MetricScore,
    PermutationWitness,
    cramers_phi,
    generalized_f1,
    generalized_fm,
    generalized_mcc,
    lp_multiclass,
    one_vs_one_average,
    perfect_fit_permutation,
)

__version__ = "0.1.0"

__all__ = [
    "AverageKind",
    "AveragingSpec",
    "HARMONIC",
    "GEOMETRIC",
    "ARITHMETIC",
    "MIN",
    "MAX",
    "harmonic_mean",
    "geometric_mean",
    "arithmetic_mean",
    "power_mean",
    "apply_average",
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
    "__version__",
]
