"""6n-1 / 6n+1 wheel coordinates and the composite-index formulas.

Every integer coprime to 6 and larger than 1 is either ``6n - 1`` (series S1)
or ``6n + 1`` (series S2) for some ``n >= 1``.  A product of two such numbers
lands at a predictable index:

    (6a-1)(6b-1) = 6(6ab - a - b) + 1      C1, lands in S2
    (6a+1)(6b+1) = 6(6ab + a + b) + 1      C2, lands in S2
    (6a+1)(6b-1) = 6(6ab - a + b) - 1      C3, lands in S1

The mirrored form ``6ab + a - b`` of C3 is the same set of indices with the
roles of a and b swapped, so it gets no constructor of its own.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

U64_MAX = 2**64 - 1


class WidthError(OverflowError):
    """A value would not fit in an unsigned 64-bit integer."""


def check_width(value: int, what: str = "value") -> int:
    if value < 0 or value > U64_MAX:
        raise WidthError(f"{what} = {value} does not fit in 64 bits")
    return value


class Series(enum.Enum):
    S1 = -1  # 6n - 1
    S2 = +1  # 6n + 1


class Case(enum.Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"


@dataclass(frozen=True)
class WheelIndex:
    series: Series
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"wheel index n must be >= 1, got {self.n}")

    @property
    def value(self) -> int:
        return index_to_value(self)


@dataclass(frozen=True)
class NonCoprime:
    """Marker returned by :func:`classify` for values outside both series."""

    value: int


@dataclass(frozen=True)
class CompositeIndex:
    index: WheelIndex
    factor_a: int
    factor_b: int
    case: Case

    @property
    def factors(self) -> tuple[int, int]:
        return case_factors(self.case, self.factor_a, self.factor_b)

    @property
    def value(self) -> int:
        return index_to_value(self.index)


def index_to_value(idx: WheelIndex) -> int:
    return 6 * idx.n + idx.series.value


def classify(v: int) -> WheelIndex | NonCoprime:
    """Locate ``v`` in the wheel.

    >>> classify(431)
    WheelIndex(series=<Series.S1: -1>, n=72)
    >>> classify(12)
    NonCoprime(value=12)
    """
    if v <= 0:
        raise ValueError(f"classify expects a positive integer, got {v}")
    r = v % 6
    if r == 5:
        return WheelIndex(Series.S1, (v + 1) // 6)
    if r == 1 and v > 1:
        return WheelIndex(Series.S2, (v - 1) // 6)
    return NonCoprime(v)


def case_factors(case: Case, a: int, b: int) -> tuple[int, int]:
    """The two wheel numbers whose product a composite index encodes."""
    if case is Case.C1:
        return 6 * a - 1, 6 * b - 1
    if case is Case.C2:
        return 6 * a + 1, 6 * b + 1
    return 6 * a + 1, 6 * b - 1


def composite_index(case: Case, a: int, b: int) -> CompositeIndex:
    if a < 1 or b < 1:
        raise ValueError(f"factor indices must be >= 1, got a={a}, b={b}")
    x, y = case_factors(case, a, b)
    check_width(x * y, "composite value")
    if case is Case.C1:
        idx = WheelIndex(Series.S2, 6 * a * b - a - b)
    elif case is Case.C2:
        idx = WheelIndex(Series.S2, 6 * a * b + a + b)
    else:
        idx = WheelIndex(Series.S1, 6 * a * b - a + b)
    return CompositeIndex(idx, a, b, case)


def from_factors(x: int, y: int) -> CompositeIndex:
    """Build the composite index of ``x * y`` from two wheel numbers.

    Raises ValueError if either factor is not of the form 6k +- 1 with k >= 1.
    """
    fx, fy = classify(x), classify(y)
    if isinstance(fx, NonCoprime) or isinstance(fy, NonCoprime):
        raise ValueError(f"{x} and {y} must both be coprime to 6 and > 1")
    if fx.series is Series.S1 and fy.series is Series.S1:
        return composite_index(Case.C1, fx.n, fy.n)
    if fx.series is Series.S2 and fy.series is Series.S2:
        return composite_index(Case.C2, fx.n, fy.n)
    if fx.series is Series.S2:
        return composite_index(Case.C3, fx.n, fy.n)
    return composite_index(Case.C3, fy.n, fx.n)
