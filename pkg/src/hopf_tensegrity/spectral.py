"""The cubic d(x, y) = 0 of stress parameters where Omega is singular.

x is the c1-cable stress (c2-cables carry 1 - x) and y the strut stress.
Solving d = 0 for y gives two branches; the stable arc of the family is
the ``+`` branch over 0 <= x <= 1, which runs from (0, 0) down to
(1/2, -1/3) and back up to (1, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, NotOnCurveError, VerificationError
from .exact import Interval, MPoly, det3, sturm_isolate, upoly
from .group import VARS, stress_matrix

CURVE_TOL = 1e-9
BRANCHES = ("stable", "other")

D_TEXT = "x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y"
DISC_TEXT = "x^4 - 2*x^3 + 31*x^2 - 30*x + 9"

AFFINE_RATIONAL_POINTS = (
    (Fraction(1), Fraction(0)),
    (Fraction(3), Fraction(3)),
    (Fraction(1, 2), Fraction(-1, 3)),
    (Fraction(0), Fraction(0)),
    (Fraction(-2), Fraction(3)),
    (Fraction(3), Fraction(-2)),
    (Fraction(1), Fraction(-1)),
    (Fraction(1, 2), Fraction(-3, 4)),
    (Fraction(-2), Fraction(-2)),
)
INFINITE_RATIONAL_POINTS = ((0, 1, 0), (1, 0, 0), (0, -1, 1))
DISTINGUISHED = (Fraction(1, 2), Fraction(-1, 3))


@dataclass(frozen=True)
class StressPoint:
    x: object
    y: object
    branch: str = "exact-given"
    exact: bool = True

    def __post_init__(self):
        if self.exact and not (isinstance(self.x, Fraction) and isinstance(self.y, Fraction)):
            raise TypeError("exact stress points need Fraction coordinates")

    @classmethod
    def given(cls, x, y) -> "StressPoint":
        """Wrap an explicit pair, keeping exactness when both are rational."""
        if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
            return cls(Fraction(x), Fraction(y), "exact-given", True)
        return cls(float(x), float(y), "exact-given", False)

    def as_floats(self):
        return float(self.x), float(self.y)

    def __str__(self):
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class SpectralCurve:
    d: MPoly
    d8: MPoly
    disc_x: MPoly


@lru_cache(maxsize=None)
def spectral_curve() -> SpectralCurve:
    d = MPoly.parse(D_TEXT, VARS)
    return SpectralCurve(d=d, d8=d * 8, disc_x=MPoly.parse(DISC_TEXT, ("x",)))


def derive_spectral_cubic() -> MPoly:
    """det Omega(x, y), computed symbolically; must equal 8 d(x, y)."""
    det = det3(stress_matrix())
    curve = spectral_curve()
    if det != curve.d8:
        raise VerificationError("det_identity", "det Omega != 8 d", det - curve.d8)
    return det


def on_curve_residual(x, y) -> float:
    """|d(x, y)| scaled by max(1, |x|, |y|)^3."""
    val = spectral_curve().d.evaluate({"x": x, "y": y})
    scale = max(1.0, abs(float(x)), abs(float(y))) ** 3
    return abs(float(val)) / scale


def is_on_curve(pt: StressPoint) -> bool:
    if pt.exact:
        return spectral_curve().d.evaluate({"x": pt.x, "y": pt.y}) == 0
    return on_curve_residual(pt.x, pt.y) < CURVE_TOL


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def discriminant_at(x):
    return x**4 - 2 * x**3 + 31 * x**2 - 30 * x + 9


def branch_y(x, which: str = "stable"):
    """Solve -3y^2 + (x^2 - x - 3) y + 3x^2 - 3x = 0 for y.

    ``stable`` takes the + square root. A Fraction x whose discriminant is a
    rational square yields an exact Fraction; otherwise a float.
    """
    if which not in BRANCHES:
        raise ValueError(f"unknown branch {which!r}")
    if which == "stable" and not 0 <= x <= 1:
        raise DomainError(f"stable branch is only defined for 0 <= x <= 1, got {x}")
    b = x * x - x - 3
    disc = discriminant_at(x)
    if disc < 0:
        raise DomainError(f"no real point of d = 0 above x = {x}")
    if isinstance(x, (int, Fraction)):
        root = _rational_sqrt(Fraction(disc))
        if root is not None:
            return (b + root) / 6 if which == "stable" else (b - root) / 6
    xf = float(x)
    bf = xf * xf - xf - 3
    sq = math.sqrt(float(disc))
    # the roots multiply to x(1 - x); compute the cancellation-free one directly
    prod = xf * (1.0 - xf)
    if bf < 0:
        minus = (bf - sq) / 6
        plus = prod / minus
    else:
        plus = (bf + sq) / 6
        minus = prod / plus
    return (plus if which == "stable" else minus) + 0.0


def branch_y_enclosure(x_iv: Interval, which: str = "stable", bits: int = 96) -> Interval:
    """Rigorous enclosure of branch_y over an interval of x values."""
    b = x_iv * x_iv - x_iv - 3
    disc = x_iv**4 - 2 * x_iv**3 + 31 * x_iv**2 - 30 * x_iv + 9
    if disc.lo < 0:
        raise DomainError(f"discriminant enclosure {disc} reaches below zero")
    root = disc.sqrt(bits)
    return (b + root) / 6 if which == "stable" else (b - root) / 6


def point_on_branch(x, which: str = "stable") -> StressPoint:
    y = branch_y(x, which)
    exact = isinstance(x, (int, Fraction)) and isinstance(y, Fraction)
    if exact:
        return StressPoint(Fraction(x), y, which, True)
    return StressPoint(float(x), float(y), which, False)


def is_stable(pt: StressPoint) -> bool:
    x, y = pt.x, pt.y
    if not (0 < x < 1 and -Fraction(1, 3) <= y < 0):
        return False
    g = branch_y(x, "stable")
    if pt.exact:
        return isinstance(g, Fraction) and g == y and is_on_curve(pt)
    return abs(float(g) - float(y)) <= CURVE_TOL * max(1.0, abs(float(y)))


def rational_points():
    """The 9 affine points and the 3 projective points of the catalogue, each verified.

    Projective points are checked on the homogenization
    x^2 y + 3x^2 z - xyz - 3y^2 z - 3x z^2 - 3y z^2. Only (0:1:0) and
    (1:0:0) lie at infinity; (0:-1:1) is the affine point (0, -1), the one
    rational point on the exceptional line of the map to E0.
    """
    d = spectral_curve().d
    out = []
    for x, y in AFFINE_RATIONAL_POINTS:
        if d.evaluate({"x": x, "y": y}) != 0:
            raise VerificationError("rational_points", f"({x}, {y}) is not on d = 0")
        out.append((x, y, Fraction(1)))
    for X, Y, Z in INFINITE_RATIONAL_POINTS:
        if homogenized(X, Y, Z) != 0:
            raise VerificationError("rational_points", f"({X}:{Y}:{Z}) is not on the closure")
        out.append((Fraction(X), Fraction(Y), Fraction(Z)))
    return out


def homogenized(X, Y, Z):
    return X * X * Y + 3 * X * X * Z - X * Y * Z - 3 * Y * Y * Z - 3 * X * Z * Z - 3 * Y * Z * Z


def certify_discriminant_positive() -> bool:
    """disc_x has no real root in [0, 1] and is positive there."""
    disc = spectral_curve().disc_x
    coeffs = disc.to_univariate("x")
    if upoly.evaluate(coeffs, Fraction(0)) == 0 or upoly.evaluate(coeffs, Fraction(1)) == 0:
        return False
    roots = sturm_isolate(disc, Interval(0, 1))
    return not roots and upoly.evaluate(coeffs, Fraction(1, 2)) > 0


def require_on_curve(pt: StressPoint):
    if not is_on_curve(pt):
        raise NotOnCurveError(f"{pt} is not on d(x, y) = 0")
