"""The curve traced by the strut/triangle crossing point (u, v) = (R1, R2).

In symmetric coordinates s = u + v, p = uv the locus is G(s, p) = 0, and
K(u, v) = G(u + v, uv) is a symmetric septic. Here the symbol s is the
symmetric sum, not the group generator.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import VerificationError
from .exact import MPoly, divides
from .group import VARS
from .linking import intersection_formulas, intersection_params_at, stable_samples
from .spectral import DISTINGUISHED, StressPoint, point_on_branch, spectral_curve
from .tensegrity import fmt_float

G_TEXT = (
    "3*s^7 - 7*s^6 - 6*s^5*p - s^5 + 8*s^4*p + 3*s^3*p^2 + 5*s^4 + 28*s^3*p - s^2*p^2"
    " - 3*s^3 - 24*s^2*p - 24*s*p^2 + s^2 + 12*s*p - 4*p"
)
SP = ("s", "p")
UV = ("u", "v")
K_TOL = 1e-9
SINGULAR_POINTS = ((Fraction(0), Fraction(0)), (Fraction(2, 3), Fraction(2, 3)))


@dataclass(frozen=True)
class TrajectoryPoint:
    x: object
    y: object
    u: object
    v: object

    @property
    def sym_s(self):
        return self.u + self.v

    @property
    def sym_p(self):
        return self.u * self.v


@dataclass(frozen=True)
class TrajectoryCurves:
    G: MPoly
    K: MPoly


@lru_cache(maxsize=None)
def build_curves() -> TrajectoryCurves:
    G = MPoly.parse(G_TEXT, SP)
    u, v = MPoly.gens(UV)
    K = G.compose({"s": u + v, "p": u * v}, UV)
    if K != K.compose({"u": v, "v": u}, UV):
        raise VerificationError("trajectory_symmetry", "K(u, v) != K(v, u)")
    if K.degree() != 7:
        raise VerificationError("trajectory_degree", f"deg K = {K.degree()}, expected 7")
    return TrajectoryCurves(G, K)


def _mulmod(a: MPoly, b: MPoly, d: MPoly) -> MPoly:
    return (a * b).rem_in(d, "y")


def _powers(base: MPoly, n: int, d: MPoly):
    out = [MPoly.const(1, VARS)]
    for _ in range(n):
        out.append(_mulmod(out[-1], base, d))
    return out


def G_numerator_mod_d() -> MPoly:
    """D^7 G((N1 + N2)/D, N1 N2 / D^2) reduced modulo d in y.

    Every monomial s^a p^b of G has a + 2b <= 7, so multiplying by D^7
    leaves the polynomial sum of c (N1 + N2)^a (N1 N2)^b D^(7 - a - 2b).
    """
    G = build_curves().G
    forms = intersection_formulas()
    d = spectral_curve().d
    n1, n2, den = (f.rem_in(d, "y") for f in (forms.N1, forms.N2, forms.D))
    s_pow = _powers((n1 + n2).rem_in(d, "y"), 7, d)
    p_pow = _powers(_mulmod(n1, n2, d), 3, d)
    d_pow = _powers(den, 7, d)
    total = MPoly.zero(VARS)
    for (a, b), c in G.terms.items():
        w = 7 - a - 2 * b
        if w < 0:
            raise VerificationError("G_identity", f"monomial s^{a} p^{b} exceeds weight 7")
        term = _mulmod(_mulmod(s_pow[a], p_pow[b], d), d_pow[w], d)
        total = total + term.scale(c)
    return total.rem_in(d, "y")


def verify_G_identity_on_curve(samples: int = 200) -> bool:
    rem = G_numerator_mod_d()
    if not rem.is_zero():
        ok, _ = divides(spectral_curve().d8, rem)
        if not ok:
            raise VerificationError("G_identity", "G(s, p) does not vanish modulo d", rem)
    G = build_curves().G
    for pt in stable_samples(samples):
        ip = intersection_params_at(pt)
        r = abs(float(G.evaluate({"s": float(ip.r1 + ip.r2), "p": float(ip.r1 * ip.r2)})))
        if r >= K_TOL:
            raise VerificationError("G_identity", f"|G| = {r:.3g} at x = {pt.x}", r)
    x0, y0 = DISTINGUISHED
    ip = intersection_params_at(StressPoint.given(x0, y0))
    if G.evaluate({"s": ip.r1 + ip.r2, "p": ip.r1 * ip.r2}) != 0:
        raise VerificationError("G_identity", "G does not vanish at the distinguished point")
    return True


def gradient(pt):
    K = build_curves().K
    vals = {"u": Fraction(pt[0]), "v": Fraction(pt[1])}
    return K.evaluate(vals), K.diff("u").evaluate(vals), K.diff("v").evaluate(vals)


def singular_point_check(pt) -> bool:
    """True iff K and both partials vanish at pt, exactly."""
    return all(c == 0 for c in gradient(pt))


def k_residual(u, v) -> float:
    """|K(u, v)| divided by the largest monomial magnitude."""
    K = build_curves().K
    u, v = float(u), float(v)
    scale = max(abs(float(c)) * abs(u) ** a * abs(v) ** b for (a, b), c in K.terms.items())
    val = abs(K.evaluate({"u": u, "v": v}))
    return val / scale if scale > 0 else val


def trajectory_samples(n: int):
    """(R1, R2) at n stable-branch points x = k / (n + 1)."""
    if n < 2:
        raise ValueError("need at least two samples")
    out = []
    for pt in stable_samples(n):
        ip = intersection_params_at(pt)
        out.append(TrajectoryPoint(pt.x, pt.y, ip.r1, ip.r2))
    return out


def sample_at(x) -> TrajectoryPoint:
    pt = point_on_branch(x)
    ip = intersection_params_at(pt)
    return TrajectoryPoint(pt.x, pt.y, ip.r1, ip.r2)


def not_divisible_by_diagonal() -> bool:
    u, v = MPoly.gens(UV)
    ok, _ = divides(u - v, build_curves().K)
    return not ok


def samples_csv(samples) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "u", "v", "K_residual"])
    for t in samples:
        w.writerow([fmt_float(t.x), fmt_float(t.y), fmt_float(t.u), fmt_float(t.v), fmt_float(k_residual(t.u, t.v))])
    return buf.getvalue()


def trajectory_report(n: int = 500) -> dict:
    curves = build_curves()
    samples = trajectory_samples(n)
    residuals = [k_residual(t.u, t.v) for t in samples]
    return {
        "G": str(curves.G),
        "K_degree": curves.K.degree(),
        "K_symmetric": True,
        "K_not_divisible_by_u_minus_v": not_divisible_by_diagonal(),
        "G_at_distinguished": str(curves.G.evaluate({"s": Fraction(1, 3), "p": Fraction(1, 36)})),
        "singular_points": {f"({a}, {b})": singular_point_check((a, b)) for a, b in SINGULAR_POINTS},
        "gradient_at_(1/6, 1/6)": [str(c) for c in gradient((Fraction(1, 6), Fraction(1, 6)))],
        "samples": n,
        "max_K_residual": max(residuals),
    }
