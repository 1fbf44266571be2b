"""Averaging functions over tuples of non-negative reals.

The workhorse is the power-mean family

    M_p(x_1, ..., x_k) = ((x_1^p + ... + x_k^p) / k) ** (1/p)

which collapses to the arithmetic mean at p = 1, the geometric mean as
p -> 0, the harmonic mean at p = -1, and the max / min in the limits
p -> +inf / -inf.  The named cases get dedicated implementations so the
collapse is exact rather than approximate; `AveragingSpec` is the small
value object the rest of the package uses to pick one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

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
]


class AverageKind(Enum):
    HARMONIC = "harmonic"
    GEOMETRIC = "geometric"
    ARITHMETIC = "arithmetic"
    POWER = "power"
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class AveragingSpec:
    """Choice of averaging function.

    `p` is the exponent for the POWER kind and must be finite there; the
    infinite limits are spelled as the explicit MIN / MAX kinds instead of
    IEEE infinities so that a spec is unambiguous when serialized.
    """

    kind: AverageKind
    p: float | None = None

    def __post_init__(self) -> None:
        if self.kind is AverageKind.POWER:
            if self.p is None:
                raise ValueError("power average needs an exponent")
            if not math.isfinite(self.p):
                raise ValueError(
                    "power exponent must be finite; use min or max for the limits"
                )
        elif self.p is not None:
            raise ValueError(f"{self.kind.value} average takes no exponent")

    @classmethod
    def power(cls, p: float) -> "AveragingSpec":
        return cls(AverageKind.POWER, float(p))

    @classmethod
    def from_string(cls, text: str) -> "AveragingSpec":
        """Parse 'harmonic', 'geometric', 'arithmetic', 'min', 'max', or 'power:<float>'."""
        text = text.strip()
        if text.startswith("power:"):
            raw = text[len("power:"):]
            try:
                p = float(raw)
            except ValueError:
                raise ValueError(f"bad power exponent {raw!r}") from None
            return cls.power(p)
        for kind in (
            AverageKind.HARMONIC,
            AverageKind.GEOMETRIC,
            AverageKind.ARITHMETIC,
            AverageKind.MIN,
            AverageKind.MAX,
        ):
            if text == kind.value:
                return cls(kind)
        raise ValueError(f"unknown averaging spec {text!r}")

    def to_string(self) -> str:
        if self.kind is AverageKind.POWER:
            return f"power:{self.p!r}"
        return self.kind.value


HARMONIC = AveragingSpec(AverageKind.HARMONIC)
GEOMETRIC = AveragingSpec(AverageKind.GEOMETRIC)
ARITHMETIC = AveragingSpec(AverageKind.ARITHMETIC)
MIN = AveragingSpec(AverageKind.MIN)
MAX = AveragingSpec(AverageKind.MAX)


def _validate(values: Sequence[float]) -> None:
    # shared domain checks: the means are defined on non-empty tuples of
    # non-negative reals only
    if len(values) == 0:
        raise ValueError("empty tuple")
    for v in values:
        if math.isnan(v):
            raise ValueError("NaN input")
        if v < 0:
            raise ValueError("negative input")


def harmonic_mean(values: Sequence[float]) -> float:
    """Harmonic mean; returns 0.0 if any entry is 0 (the limiting value)."""
    _validate(values)
    for v in values:
        if v == 0:
            return 0.0
    return len(values) / sum(1.0 / v for v in values)


def geometric_mean(values: Sequence[float]) -> float:
    """Geometric mean; returns 0.0 if any entry is 0.

    Short tuples multiply directly (exact for the two-element case used in
    matrix normalization); longer ones go through log space to dodge
    under/overflow.
    """
    _validate(values)
    for v in values:
        if v == 0:
            return 0.0
    k = len(values)
    if k == 1:
        return float(values[0])
    if k == 2:
        return math.sqrt(values[0] * values[1])
    if k == 3:
        return (values[0] * values[1] * values[2]) ** (1.0 / 3.0)
    return math.exp(sum(math.log(v) for v in values) / k)


def arithmetic_mean(values: Sequence[float]) -> float:
    _validate(values)
    return sum(values) / len(values)


def power_mean(values: Sequence[float], p: float) -> float:
    """Power mean with exponent p; accepts +-inf for the max / min limits.

    Any zero entry annihilates the mean for p <= 0 (the limiting value of
    the formula).  The generic branch rescales by the largest (p > 0) or
    smallest (p < 0) entry so intermediate powers stay tame for large |p|.
    """
    _validate(values)
    if math.isnan(p):
        raise ValueError("NaN exponent")
    if p == math.inf:
        return float(max(values))
    if p == -math.inf:
        return float(min(values))
    if p == 0:
        return geometric_mean(values)
    if p == 1:
        return arithmetic_mean(values)
    if p == -1:
        return harmonic_mean(values)
    k = len(values)
    if p > 0:
        anchor = float(max(values))
        if anchor == 0.0:
            return 0.0
    else:
        for v in values:
            if v == 0:
                return 0.0
        anchor = float(min(values))
    total = sum((v / anchor) ** p for v in values)
    return anchor * (total / k) ** (1.0 / p)


def apply_average(spec: AveragingSpec, values: Sequence[float]) -> float:
    """Evaluate the average selected by `spec` on `values`."""
    if spec.kind is AverageKind.HARMONIC:
        return harmonic_mean(values)
    if spec.kind is AverageKind.GEOMETRIC:
        return geometric_mean(values)
    if spec.kind is AverageKind.ARITHMETIC:
        return arithmetic_mean(values)
    if spec.kind is AverageKind.POWER:
        return power_mean(values, spec.p)
    if spec.kind is AverageKind.MIN:
        _validate(values)
        return float(min(values))
    if spec.kind is AverageKind.MAX:
        _validate(values)
        return float(max(values))
    raise ValueError(f"unknown averaging kind {spec.kind!r}")
