"""Closed intervals with rational endpoints.

Endpoints are ``Fraction`` so every operation is exact; enclosures are
conservative by construction (no floating rounding to worry about). Only
``sqrt`` approximates, and it rounds outward explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import as_fraction


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, v) -> "Interval":
        return cls(v, v)

    @staticmethod
    def _lift(other):
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction, float)):
            return Interval.point(other)
        return NotImplemented

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, v) -> bool:
        v = as_fraction(v)
        return self.lo <= v <= self.hi

    __contains__ = contains

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self):
        """+1 / -1 if the whole interval is strictly signed, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.contains_zero():
            raise ZeroDivisionError(f"interval divisor {other} contains zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        if n == 0:
            return Interval.point(1)
        a, b = self.lo ** n, self.hi ** n
        if n % 2 == 1:
            return Interval(a, b)
        if self.lo >= 0:
            return Interval(a, b)
        if self.hi <= 0:
            return Interval(b, a)
        return Interval(0, max(a, b))

    def sqrt(self, bits: int = 64) -> "Interval":
        """Outward enclosure of sqrt over the interval (lo must be >= 0)."""
        if self.lo < 0:
            raise ValueError(f"sqrt of interval with negative part {self}")
        return Interval(_sqrt_down(self.lo, bits), _sqrt_up(self.hi, bits))

    def bisect(self):
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _sqrt_down(q: Fraction, bits: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    num, den = q.numerator, q.denominator
    # exact rational square roots stay exact
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    scale = 1 << bits
    return Fraction(math.isqrt(num * scale * scale // den), scale)


def _sqrt_up(q: Fraction, bits: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    lo = _sqrt_down(q, bits)
    if lo * lo == q:
        return lo
    return lo + Fraction(1, 1 << bits)


def interval_eval(poly, box):
    """Enclosure of ``poly`` over a box ``{var: Interval}``.

    Degenerate boxes give degenerate (exact) results.
    """
    values = {v: (iv if isinstance(iv, Interval) else Interval.point(iv)) for v, iv in box.items()}
    out = poly.evaluate(values)
    if not isinstance(out, Interval):
        out = Interval.point(out)
    return out
