"""The spectral cubic as an elliptic curve over Q.

Long model  E : Y^2 + 2XY + 72Y = X^3 + 48X^2 + 432X
Short model E0: V^2 = U^3 - 384048 U + 82988928
(Cremona 30a2 in the LMFDB; the label is quoted, not recomputed.)

The affine part of d = 0 maps to E0 by

    U = (1176x - 468y - 468) / (2x - 3y - 3),  V = 15552 (x + y - 1) / (2x - 3y - 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, VerificationError
from .exact import MPoly, divides, upoly
from .group import VARS
from .spectral import AFFINE_RATIONAL_POINTS, DISTINGUISHED, StressPoint, require_on_curve, spectral_curve


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.discriminant == 0:
            raise ValueError(f"singular Weierstrass model {self}")

    @property
    def b2(self):
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        return a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2

    @property
    def c4(self):
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    def invariants(self) -> dict:
        return {k: getattr(self, k) for k in ("b2", "b4", "b6", "b8", "c4", "c6", "discriminant")}

    def contains(self, u, v) -> bool:
        return v * v + self.a1 * u * v + self.a3 * v == u**3 + self.a2 * u * u + self.a4 * u + self.a6

    def is_short(self) -> bool:
        return self.a1 == self.a2 == self.a3 == 0


E_LONG = WeierstrassModel(a1=2, a2=48, a3=72, a4=432, a6=0)
E0 = WeierstrassModel(a4=-384048, a6=82988928)


@dataclass(frozen=True)
class EllipticPoint:
    """A point of a model; u = v = None is the point at infinity."""

    u: Fraction | None
    v: Fraction | None
    model: WeierstrassModel = E0

    def __post_init__(self):
        if self.u is None or self.v is None:
            if not (self.u is None and self.v is None):
                raise ValueError("half-infinite point")
            return
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))
        if not self.model.contains(self.u, self.v):
            raise ValueError(f"({self.u}, {self.v}) is not on the model")

    @classmethod
    def identity(cls, model: WeierstrassModel = E0) -> "EllipticPoint":
        return cls(None, None, model)

    @property
    def is_identity(self) -> bool:
        return self.u is None

    def __neg__(self):
        if self.is_identity:
            return self
        m = self.model
        return EllipticPoint(self.u, -self.v - m.a1 * self.u - m.a3, m)

    def __add__(self, other: "EllipticPoint") -> "EllipticPoint":
        return group_law(self, other)

    def __sub__(self, other):
        return group_law(self, -other)

    def __mul__(self, n: int):
        return multiply(self, n)

    __rmul__ = __mul__

    def order(self, limit: int = 16) -> int:
        q = self
        for k in range(1, limit + 1):
            if q.is_identity:
                return k
            q = q + self
        raise ValueError(f"order exceeds {limit}")

    def to_json(self):
        return None if self.is_identity else [str(self.u), str(self.v)]

    def __str__(self):
        return "O" if self.is_identity else f"({self.u}, {self.v})"


def group_law(p: EllipticPoint, q: EllipticPoint) -> EllipticPoint:
    """Chord-tangent addition on a (long or short) Weierstrass model."""
    if p.model != q.model:
        raise ValueError("points lie on different models")
    m = p.model
    if p.is_identity:
        return q
    if q.is_identity:
        return p
    if p.u == q.u and p.v + q.v + m.a1 * q.u + m.a3 == 0:
        return EllipticPoint.identity(m)
    if p.u == q.u:
        lam = (3 * p.u**2 + 2 * m.a2 * p.u + m.a4 - m.a1 * p.v) / (2 * p.v + m.a1 * p.u + m.a3)
    else:
        lam = (q.v - p.v) / (q.u - p.u)
    nu = p.v - lam * p.u
    u3 = lam**2 + m.a1 * lam - m.a2 - p.u - q.u
    v3 = -(lam + m.a1) * u3 - nu - m.a3
    return EllipticPoint(u3, v3, m)


def multiply(p: EllipticPoint, n: int) -> EllipticPoint:
    if n < 0:
        return multiply(-p, -n)
    result = EllipticPoint.identity(p.model)
    addend = p
    while n:
        if n & 1:
            result = result + addend
        addend = addend + addend
        n >>= 1
    return result


# ------------------------------------------------------------ birational map
U_NUM = "1176*x - 468*y - 468"
V_NUM = "15552*(x + y - 1)"
MAP_DEN = "2*x - 3*y - 3"


def birational_map(pt: StressPoint) -> EllipticPoint:
    require_on_curve(pt)
    if not pt.exact:
        raise TypeError("the map to E0 is only evaluated at exact points")
    x, y = pt.x, pt.y
    den = 2 * x - 3 * y - 3
    if den == 0:
        raise DomainError(f"{pt} lies on the exceptional line 2x - 3y - 3 = 0")
    return EllipticPoint((1176 * x - 468 * y - 468) / den, 15552 * (x + y - 1) / den, E0)


def birational_numerator() -> MPoly:
    """Numerator of V^2 - U^3 - a4 U - a6 after clearing (2x - 3y - 3)^3."""
    u, v, w = (MPoly.parse(t, VARS) for t in (U_NUM, V_NUM, MAP_DEN))
    return v * v * w - u**3 - E0.a4 * u * w * w - E0.a6 * w**3


def verify_birational_identity() -> bool:
    num = birational_numerator()
    if num.is_zero():
        raise VerificationError("birational_identity", "cleared numerator is identically zero")
    ok, _ = divides(spectral_curve().d8, num)
    if not ok:
        raise VerificationError("birational_identity", "numerator is not divisible by d", num.divmod(spectral_curve().d8)[1])
    return True


# ------------------------------------------------------------------ torsion
@dataclass(frozen=True)
class TorsionGroup:
    elements: tuple
    structure: tuple
    orders: dict
    seeds: tuple

    def affine(self):
        return [p for p in self.elements if not p.is_identity]

    def unseeded(self):
        """Elements reached by closure that are not images of the listed affine points."""
        return [p for p in self.elements if p not in self.seeds and not p.is_identity]

    def to_json(self) -> dict:
        return {
            "model": {"a": [int(E0.a4), int(E0.a6)]},
            "points": [p.to_json() for p in self.affine()],
            "structure": list(self.structure),
            "distinguished_image": birational_map(StressPoint.given(*DISTINGUISHED)).to_json(),
            "orders": {str(p): k for p, k in self.orders.items()},
            "without_affine_preimage": [p.to_json() for p in self.unseeded()],
        }


def _sort_key(p: EllipticPoint):
    return (0, 0, 0) if p.is_identity else (1, p.u, p.v)


def nagell_lutz_ok(p: EllipticPoint) -> bool:
    """Integral coordinates and V = 0 or V^2 | 4A^3 + 27B^2 (short model only)."""
    m = p.model
    if not m.is_short():
        raise ValueError("Nagell-Lutz check is stated for short models")
    if p.is_identity:
        return True
    if p.u.denominator != 1 or p.v.denominator != 1:
        return False
    disc = int(4 * m.a4**3 + 27 * m.a6**2)
    v = int(p.v)
    return v == 0 or disc % (v * v) == 0


def torsion_subgroup(max_size: int = 16) -> TorsionGroup:
    """Close the images of the affine rational points under the group law."""
    seeds = tuple(birational_map(StressPoint.given(x, y)) for x, y in AFFINE_RATIONAL_POINTS)
    elements = {EllipticPoint.identity(E0), *seeds}
    for p in list(elements):
        elements.add(-p)
    while True:
        new = {p + q for p in elements for q in elements} - elements
        if not new:
            break
        elements |= new
        if len(elements) > max_size:
            raise VerificationError("torsion", f"closure exceeded {max_size} elements")
    ordered = tuple(sorted(elements, key=_sort_key))
    orders = {p: p.order() for p in ordered}
    for p in ordered:
        if not nagell_lutz_ok(p):
            raise VerificationError("torsion", f"{p} fails the Nagell-Lutz condition")
    return TorsionGroup(ordered, group_structure(orders), orders, seeds)


def group_structure(orders: dict) -> tuple:
    """(m, n) with G = Z/m x Z/n, m | n, for a finite abelian group given by element orders.

    n is the exponent; the m-torsion must then have exactly m^2 elements.
    """
    size = len(orders)
    exponent = 1
    for k in orders.values():
        exponent = exponent * k // _gcd(exponent, k)
    m = size // exponent
    if m * exponent != size:
        raise VerificationError("torsion", "exponent does not divide the group order")
    m_torsion = sum(1 for k in orders.values() if m % k == 0)
    if m_torsion != m * m:
        raise VerificationError("torsion", f"not of the form Z/{m} x Z/{exponent}")
    return (m, exponent)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def two_torsion_roots():
    """Rational roots of U^3 + a4 U + a6 (the U-coordinates of order-2 points)."""
    return upoly.rational_roots([E0.a6, E0.a4, 0, 1])


def model_invariants_check() -> dict:
    """Certify E ~ E0 over Q via c4' = u^4 c4, c6' = u^6 c6 with rational u."""
    for m in (E_LONG, E0):
        if m.c4**3 - m.c6**2 != 1728 * m.discriminant:
            raise VerificationError("model_invariants", f"c4^3 - c6^2 != 1728 disc for {m}")
    r4 = E0.c4 / E_LONG.c4
    r6 = E0.c6 / E_LONG.c6
    u2 = r6 / r4
    u = _rational_sqrt(u2)
    if u is None or u**4 != r4 or u**6 != r6:
        raise VerificationError("model_invariants", "no rational scale factor relates E and E0")
    return {
        "E": {k: str(v) for k, v in E_LONG.invariants().items()},
        "E0": {k: str(v) for k, v in E0.invariants().items()},
        "scale_factor": str(u),
        "j_invariant": str(E0.c4**3 / E0.discriminant),
    }


def _rational_sqrt(q: Fraction):
    from math import isqrt

    if q <= 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None
