"""Closed real intervals with outward rounding.

Sums and products use error-free transforms (TwoSum, Dekker's
TwoProduct) to learn on which side the exact result lies, so a bound is
moved by one ulp only when the operation was inexact. ``exp`` is widened
by a few ulps since libm does not promise correct rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

_EXP_ULPS = 4
_SPLITTER = 134217729.0  # 2**27 + 1
# below this magnitude the product error term may underflow
_TINY = 1e-280
_HUGE = 1e290


def _down(x: float, n: int = 1) -> float:
    for _ in range(n):
        x = math.nextafter(x, -math.inf)
    return x


def _up(x: float, n: int = 1) -> float:
    for _ in range(n):
        x = math.nextafter(x, math.inf)
    return x


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float | None]:
    p = a * b
    if p == 0.0 and (a == 0.0 or b == 0.0):
        return p, 0.0
    if not (_TINY < abs(p) < _HUGE) or abs(a) > _HUGE or abs(b) > _HUGE:
        return p, None
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _bounds(value: float, err: float | None) -> tuple[float, float]:
    if err is None:
        return _down(value), _up(value)
    if err > 0:
        return value, _up(value)
    if err < 0:
        return _down(value), value
    return value, value


def add_bounds(a: float, b: float) -> tuple[float, float]:
    return _bounds(*_two_sum(a, b))


def mul_bounds(a: float, b: float) -> tuple[float, float]:
    return _bounds(*_two_prod(a, b))


@dataclass(frozen=True)
class IntervalValue:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> IntervalValue:
        return cls(float(x), float(x))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x) -> bool:
        if isinstance(x, IntervalValue):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def __add__(self, other) -> IntervalValue:
        if isinstance(other, IntervalValue):
            olo, ohi = other.lo, other.hi
        else:
            olo = ohi = float(other)
        return IntervalValue(add_bounds(self.lo, olo)[0], add_bounds(self.hi, ohi)[1])

    __radd__ = __add__

    def __neg__(self) -> IntervalValue:
        return IntervalValue(-self.hi, -self.lo)

    def __sub__(self, other) -> IntervalValue:
        return self + (-other)

    def __rsub__(self, other) -> IntervalValue:
        return (-self) + other

    def __mul__(self, other) -> IntervalValue:
        if isinstance(other, IntervalValue):
            pairs = ((self.lo, other.lo), (self.lo, other.hi),
                     (self.hi, other.lo), (self.hi, other.hi))
        else:
            x = float(other)
            pairs = ((self.lo, x), (self.hi, x))
        bounds = [mul_bounds(a, b) for a, b in pairs]
        return IntervalValue(min(b[0] for b in bounds), max(b[1] for b in bounds))

    __rmul__ = __mul__

    def __truediv__(self, other: float) -> IntervalValue:
        if other <= 0:
            raise ZeroDivisionError("only positive scalar divisors are supported")
        return IntervalValue(_down(self.lo / other), _up(self.hi / other))

    def exp(self) -> IntervalValue:
        lo = max(0.0, _down(math.exp(self.lo), _EXP_ULPS))
        return IntervalValue(lo, _up(math.exp(self.hi), _EXP_ULPS))

    def intersect(self, other: IntervalValue) -> IntervalValue:
        return IntervalValue(max(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: IntervalValue) -> IntervalValue:
        return IntervalValue(min(self.lo, other.lo), max(self.hi, other.hi))

    def reflect(self) -> IntervalValue:
        """The interval ``1 - self``."""
        return IntervalValue(add_bounds(1.0, -self.hi)[0], add_bounds(1.0, -self.lo)[1])

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"
