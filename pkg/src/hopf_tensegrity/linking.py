"""Strut/triangle intersections, linking numbers, and the persistence certificate.

Write A = p0, B = rho(s) p0, C = rho(s^2) p0 for the triangle Delta and
E = rho(c1 s) p0, F = rho(c1 s^2) p0 for the strut of Delta' that pierces it.
The crossing point is

    tau F + (1 - tau) E = B + R1 (A - B) + R2 (C - B)

with tau = N_tau / D_tau, R1 = N1 / D, R2 = N2 / D as rational functions on
d = 0. The strut crosses the open disk iff 0 < tau < 1, R1 > 0, R2 > 0 and
R1 + R2 < 1; the certificate shows none of the numerators or denominators
involved changes sign along the stable arc 0 < x < 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateConfigurationError, DomainError, PoleError, VerificationError
from .exact import Interval, MPoly, det3, divides, interval_eval, refine, resultant, sturm_isolate, upoly
from .group import C1, S, VARS, build_group_and_rep, compose, matvec
from .spectral import (
    DISTINGUISHED,
    StressPoint,
    branch_y,
    branch_y_enclosure,
    point_on_branch,
    spectral_curve,
)
from .tensegrity import Framework, null_vector_poly

P_TEXT = (
    "4*x^4 + 3*x^2*y^2 - 20*x^3 - 6*x^2*y - 15*x*y^2"
    " + 31*x^2 + 6*x*y + 21*y^2 - 15*x + 18*y + 9"
)
Q1_TEXT = (
    "-4*x^4 - 12*x^3*y + x^2*y^2 + 9*x*y^3 + 8*x^3 + 42*x^2*y + 10*x*y^2 - 27*y^3"
    " + 17*x^2 - 15*x*y - 38*y^2 - 12*x - 15*y"
)
Q2_TEXT = (
    "4*x^4 - 4*x^3*y - 13*x^2*y^2 + 9*x*y^3 - 8*x^3 + 2*x^2*y + 44*x*y^2 - 18*y^3"
    " + 7*x^2 + 29*x*y - 49*y^2 + 6*x - 36*y - 9"
)

# resultants Res_y(8 d, F) whose factorizations are stated in closed form
STATED_RESULTANTS = {
    "N_tau": "-384*x*(x-3)*(x+2)*(x-1)^3",
    "D_tau": "48*(x-3)*(2*x-1)*(x-1)^2",
    "N1": "98304*x*(x-3)^4*(x-1)^7*(3*x^4-20*x^3+7*x^2+4*x-3)",
}

REFINEMENT_BUDGET = 64
LINK_TOL = 1e-12


@dataclass(frozen=True)
class IntersectionFormulas:
    N_tau: MPoly
    D_tau: MPoly
    N1: MPoly
    N2: MPoly
    D: MPoly
    P: MPoly
    Q1: MPoly
    Q2: MPoly

    def tracked(self):
        """The sign functions the certificate follows, by name."""
        return {
            "N_tau": self.N_tau,
            "D_tau": self.D_tau,
            "D_tau-N_tau": self.D_tau - self.N_tau,
            "N1": self.N1,
            "N2": self.N2,
            "D": self.D,
            "D-N1-N2": self.D - self.N1 - self.N2,
        }


@lru_cache(maxsize=None)
def intersection_formulas() -> IntersectionFormulas:
    """Closed forms as printed (no verification; see derive_intersection_formulas)."""
    parse = lambda t: MPoly.parse(t, VARS)  # noqa: E731
    P, Q1, Q2 = parse(P_TEXT), parse(Q1_TEXT), parse(Q2_TEXT)
    N_tau = parse("(-x + y)*(2*x + 3*y + 1)")
    D_tau = parse("2*x*y - 5*y - 3")
    return IntersectionFormulas(
        N_tau=N_tau,
        D_tau=D_tau,
        N1=parse("(-2*x + y + 3)*(x - 1)") * Q1,
        N2=-parse("2*x^2 + x*y - 5*x - 4*y") * Q2,
        D=D_tau * P,
        P=P,
        Q1=Q1,
        Q2=Q2,
    )


def strut_triangle_vertices(p0):
    """(A, B, C, E, F) as images of p0 (any scalar or MPoly entries)."""
    _, rho = build_group_and_rep()
    s2 = compose(S, S)
    return (
        tuple(p0),
        matvec(rho[S], p0),
        matvec(rho[s2], p0),
        matvec(rho[compose(C1, S)], p0),
        matvec(rho[compose(C1, s2)], p0),
    )


def cramer_solution():
    """Solve the crossing equation over Q(x, y) by Cramer's rule.

    Unknowns are (tau, R1, R2) in tau (F - E) - R1 (A - B) - R2 (C - B) = B - E.
    Returns the common determinant and the three numerator determinants.
    """
    A, B, C, E, F = strut_triangle_vertices(null_vector_poly())
    cols = [
        [F[i] - E[i] for i in range(3)],
        [B[i] - A[i] for i in range(3)],
        [B[i] - C[i] for i in range(3)],
    ]
    rhs = [B[i] - E[i] for i in range(3)]

    def matrix(columns):
        return [[columns[j][i] for j in range(3)] for i in range(3)]

    det = det3(matrix(cols))
    nums = []
    for k in range(3):
        replaced = list(cols)
        replaced[k] = rhs
        nums.append(det3(matrix(replaced)))
    return det, nums


@lru_cache(maxsize=None)
def derive_intersection_formulas() -> IntersectionFormulas:
    """Cramer-rule solution checked against the closed forms modulo d."""
    forms = intersection_formulas()
    d8 = spectral_curve().d8
    det, (num_tau, num_r1, num_r2) = cramer_solution()
    checks = {
        "tau": num_tau * forms.D_tau - forms.N_tau * det,
        "R1": num_r1 * forms.D - forms.N1 * det,
        "R2": num_r2 * forms.D - forms.N2 * det,
    }
    for name, diff in checks.items():
        ok, _ = divides(d8, diff)
        if not ok:
            raise VerificationError("intersection_formulas", f"{name} differs from its closed form modulo d", diff.divmod(d8)[1])
    if forms.Q1.coeffs("y")[3] != MPoly.parse("9*x - 27", VARS):
        raise VerificationError("intersection_formulas", "Q1 y^3 coefficient is not 9x - 27")
    return forms


# ---------------------------------------------------------------- evaluation
@dataclass(frozen=True)
class IntersectionParams:
    tau: object
    r1: object
    r2: object
    classification: str

    def quantities(self):
        """tau, 1 - tau, R1, R2, 1 - R1 - R2: all positive iff interior-crossing."""
        return (self.tau, 1 - self.tau, self.r1, self.r2, 1 - self.r1 - self.r2)


def classify(tau, r1, r2, tol=0.0) -> str:
    qs = (tau, 1 - tau, r1, r2, 1 - r1 - r2)
    if all(q > tol for q in qs):
        return "interior-crossing"
    if any(q < -tol for q in qs):
        return "miss"
    return "boundary"


def intersection_params_at(pt: StressPoint) -> IntersectionParams:
    forms = intersection_formulas()
    vals = {"x": pt.x, "y": pt.y}
    n_tau, d_tau = forms.N_tau.evaluate(vals), forms.D_tau.evaluate(vals)
    n1, n2, den = forms.N1.evaluate(vals), forms.N2.evaluate(vals), forms.D.evaluate(vals)
    if d_tau == 0:
        raise PoleError("D_tau", pt)
    if den == 0:
        raise PoleError("D", pt)
    if pt.exact:
        tau, r1, r2 = Fraction(n_tau) / d_tau, Fraction(n1) / den, Fraction(n2) / den
        return IntersectionParams(tau, r1, r2, classify(tau, r1, r2))
    tau, r1, r2 = float(n_tau) / float(d_tau), float(n1) / float(den), float(n2) / float(den)
    return IntersectionParams(tau, r1, r2, classify(tau, r1, r2, 1e-12))


# ------------------------------------------------------------------ linking
def _sub(a, b):
    return tuple(p - q for p, q in zip(a, b))


def _dot(a, b):
    return sum(p * q for p, q in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


@dataclass(frozen=True)
class Crossing:
    edge: tuple
    sign: int
    barycentric: tuple


@dataclass(frozen=True)
class DiskReport:
    """Signed crossings of one triangle's edges through another's disk."""

    linking: int
    crossings: tuple
    margin: float  # smallest decisive margin, dimensionless


def disk_crossings(tri_a, tri_b, exact: bool, tol: float = LINK_TOL) -> DiskReport:
    """Count signed transversal crossings of polygon ``tri_b`` through the disk of ``tri_a``.

    The disk is oriented by n = (B - A) x (C - A); a crossing along n counts
    +1. Decisions within ``tol`` (dimensionless: barycentric coordinates and
    plane distances relative to the configuration scale) raise
    DegenerateConfigurationError. Exact inputs use tol = 0.
    """
    A, B, C = tri_a
    n = _cross(_sub(B, A), _sub(C, A))
    nn = _dot(n, n)
    if nn == 0:
        raise DegenerateConfigurationError("strut triangle is degenerate")
    if exact:
        tol = 0
        norm_h = lambda h: h  # noqa: E731
    else:
        scale = max(math.sqrt(sum(float(c) ** 2 for c in p)) for p in (*tri_a, *tri_b)) or 1.0
        denom = math.sqrt(float(nn)) * scale
        norm_h = lambda h: float(h) / denom  # noqa: E731

    def bary(X):
        return (
            _dot(n, _cross(_sub(B, X), _sub(C, X))) / nn,
            _dot(n, _cross(_sub(C, X), _sub(A, X))) / nn,
            _dot(n, _cross(_sub(A, X), _sub(B, X))) / nn,
        )

    crossings, margins = [], []
    m = len(tri_b)
    for k in range(m):
        P, Q = tri_b[k], tri_b[(k + 1) % m]
        hP, hQ = norm_h(_dot(n, _sub(P, A))), norm_h(_dot(n, _sub(Q, A)))
        if hP * hQ > 0 and min(abs(hP), abs(hQ)) > tol:
            margins.append(min(abs(hP), abs(hQ)))
            continue
        if abs(hP) <= tol and abs(hQ) <= tol:
            lp, lq = bary(P), bary(Q)
            if any(a < -tol and b < -tol for a, b in zip(lp, lq)):
                margins.append(max(min(-a, -b) for a, b in zip(lp, lq)))
                continue
            raise DegenerateConfigurationError(f"edge {k} lies in the plane of the disk")
        t = hP / (hP - hQ)
        t = min(max(t, 0), 1)
        X = tuple(p + t * (q - p) for p, q in zip(P, Q))
        lam = bary(X)
        low = min(lam)
        if low < -tol:
            margins.append(-low)
            continue
        transversal = abs(hP) > tol and abs(hQ) > tol and hP * hQ < 0
        if low > tol and transversal:
            crossings.append(Crossing(k, 1 if hQ > hP else -1, tuple(lam)))
            margins.append(min(low, abs(hP), abs(hQ)))
            continue
        raise DegenerateConfigurationError(
            f"edge {k} meets the disk non-transversally (barycentric {tuple(map(float, lam))})"
        )
    return DiskReport(sum(c.sign for c in crossings), tuple(crossings), float(min(margins)))


def _triangle_points(fw: Framework, t: int):
    return tuple(fw.nodes[i] for i in fw.triangles()[t])


def _check_disjoint(pa, pb, exact):
    scale = max(math.sqrt(sum(float(c) ** 2 for c in p)) for p in (*pa, *pb)) or 1.0
    for p in pa:
        for q in pb:
            dist2 = _dot(_sub(p, q), _sub(p, q))
            if (exact and dist2 == 0) or (not exact and math.sqrt(float(dist2)) <= LINK_TOL * scale):
                raise DegenerateConfigurationError("strut triangles share a node")


def triangle_pair_report(fw: Framework, a: int, b: int, tol: float = LINK_TOL) -> DiskReport:
    if a == b:
        raise ValueError("linking number of a triangle with itself is undefined here")
    pa, pb = _triangle_points(fw, a), _triangle_points(fw, b)
    _check_disjoint(pa, pb, fw.exact)
    return disk_crossings(pa, pb, fw.exact, tol)


def triangle_pair_linking(fw: Framework, a: int, b: int) -> int:
    """lk(a, b) by signed crossings of b through the disk bounded by a."""
    return triangle_pair_report(fw, a, b).linking


@dataclass(frozen=True)
class LinkingMatrix:
    entries: tuple
    margin: float = field(default=math.inf)

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(4) for j in range(4))

    def all_hopf(self) -> bool:
        return all(abs(self.entries[i][j]) == 1 for i in range(4) for j in range(4) if i != j)

    def to_json(self):
        return [list(r) for r in self.entries]


def linking_matrix(fw: Framework, tol: float = LINK_TOL) -> LinkingMatrix:
    """All ordered pairs; entry (i, j) uses the disk of triangle i."""
    rows = [[0] * 4 for _ in range(4)]
    margin = math.inf
    for i in range(4):
        for j in range(4):
            if i != j:
                rep = triangle_pair_report(fw, i, j, tol)
                rows[i][j] = rep.linking
                margin = min(margin, rep.margin)
    return LinkingMatrix(tuple(tuple(r) for r in rows), margin)


# -------------------------------------------------------------- certificate
@dataclass
class RootRecord:
    lo: Fraction
    hi: Fraction
    on_stable_branch: bool | None  # None: undecided within the budget
    note: str = ""
    branch: str | None = None  # "stable", "other", or None when F vanishes on neither real branch

    def to_json(self):
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "on_stable_branch": self.on_stable_branch,
            "branch": self.branch,
            "note": self.note,
        }


@dataclass
class FunctionRecord:
    name: str
    function: MPoly
    resultant: MPoly
    stated_factorization_matches: bool | None
    resultant_sign_vs_stated: int | None
    roots_in_01: list
    sign_at_half: int
    status: str  # certified | vanishes-on-stable-branch | inconclusive

    def to_json(self):
        return {
            "name": self.name,
            "resultant": self.resultant.coefficient_strings("x"),
            "stated_factorization_matches": self.stated_factorization_matches,
            "resultant_sign_vs_stated": self.resultant_sign_vs_stated,
            "roots_in_01": [r.to_json() for r in self.roots_in_01],
            "sign_at_half": "+" if self.sign_at_half > 0 else "-",
            "status": self.status,
        }


@dataclass
class CertificateReport:
    functions: list
    conclusions: dict
    verdict: bool

    def record(self, name) -> FunctionRecord:
        return next(f for f in self.functions if f.name == name)

    def to_json(self):
        return {
            "functions": [f.to_json() for f in self.functions],
            "conclusions": self.conclusions,
            "verdict": self.verdict,
        }


def _univariate_x(p: MPoly) -> MPoly:
    return p.with_vars(("x",))


def stated_resultant(name) -> MPoly | None:
    text = STATED_RESULTANTS.get(name)
    return MPoly.parse(text, ("x",)) if text else None


def _stable_vanishing_at_rational(F: MPoly, r: Fraction) -> RootRecord:
    """Does F vanish at (r, g(r))? Decided exactly.

    If g(r) is rational we substitute. Otherwise g(r) is a quadratic
    irrational and F(r, y) mod d(r, y) = a + b y vanishes at it iff a = b = 0.
    """
    y_stable = branch_y(r, "stable")
    notes = []
    y_other = branch_y(r, "other")
    other_zero = False
    if isinstance(y_stable, Fraction):
        stable_zero = F.evaluate({"x": r, "y": y_stable}) == 0
        if isinstance(y_other, Fraction) and F.evaluate({"x": r, "y": y_other}) == 0:
            other_zero = True
            notes.append(f"vanishes on the other branch at ({r}, {y_other})")
    else:
        # conjugate branches: F vanishes on one iff on both
        d = spectral_curve().d
        reduced = F.subs({"x": r}).rem_in(d.subs({"x": r}), "y")
        stable_zero = other_zero = reduced.is_zero()
    if stable_zero:
        notes.append(f"vanishes on the stable branch at x = {r}")
    branch = "stable" if stable_zero else "other" if other_zero else None
    return RootRecord(r, r, stable_zero, "; ".join(notes), branch)


def _stable_vanishing_on_interval(F: MPoly, res_x, root) -> RootRecord:
    """Separate F from zero on the stable branch over an isolating interval."""
    iv = root
    for _ in range(REFINEMENT_BUDGET + 1):
        x_iv = Interval(iv.lo, iv.hi)
        try:
            y_iv = branch_y_enclosure(x_iv, "stable")
        except DomainError:
            # naive enclosure of the discriminant is too wide; narrow the interval
            y_iv = None
        if y_iv is not None and interval_eval(F, {"x": x_iv, "y": y_iv}).sign() is not None:
            return RootRecord(root.lo, root.hi, False, "separated from zero by interval evaluation", "other")
        iv = refine(res_x, iv, iv.interval.width / 2)
        if iv.is_exact:
            return _stable_vanishing_at_rational(F, iv.lo)
    return RootRecord(root.lo, root.hi, None, "refinement budget exhausted")


def certify_function(name: str, F: MPoly) -> FunctionRecord:
    d8 = spectral_curve().d8
    res = _univariate_x(resultant(d8, F, "y"))
    stated = stated_resultant(name)
    matches, sign = None, None
    if stated is not None:
        if res == stated:
            matches, sign = True, 1
        elif res == -stated:
            matches, sign = True, -1
        else:
            matches = False
    roots = []
    for root in sturm_isolate(res, Interval(0, 1)):
        if root.is_exact:
            roots.append(_stable_vanishing_at_rational(F, root.lo))
        else:
            roots.append(_stable_vanishing_on_interval(F, res, root))
    x0, y0 = DISTINGUISHED
    at_half = F.evaluate({"x": x0, "y": y0})
    if any(r.on_stable_branch for r in roots):
        status = "vanishes-on-stable-branch"
    elif any(r.on_stable_branch is None for r in roots) or at_half == 0:
        status = "inconclusive"
    else:
        status = "certified"
    return FunctionRecord(
        name=name,
        function=F,
        resultant=res,
        stated_factorization_matches=matches,
        resultant_sign_vs_stated=sign,
        roots_in_01=roots,
        sign_at_half=(at_half > 0) - (at_half < 0),
        status=status,
    )


def persistence_certificate() -> CertificateReport:
    """Certify that tau, 1 - tau, R1, R2, 1 - R1 - R2 keep their signs on 0 < x < 1.

    Each tracked F vanishes on d = 0 above x only if Res_y(8d, F)(x) = 0
    (the y^2 coefficient of d is constant). Roots inside (0, 1) are checked
    against the stable branch; with none there, the sign of F along the arc
    is its sign at (1/2, -1/3).
    """
    forms = derive_intersection_formulas()
    records = [certify_function(name, F) for name, F in forms.tracked().items()]
    sign = {r.name: r.sign_at_half for r in records}
    conclusions = {
        "tau>0": sign["N_tau"] * sign["D_tau"] > 0,
        "tau<1": sign["D_tau-N_tau"] * sign["D_tau"] > 0,
        "R1>0": sign["N1"] * sign["D"] > 0,
        "R2>0": sign["N2"] * sign["D"] > 0,
        "R1+R2<1": sign["D-N1-N2"] * sign["D"] > 0,
    }
    verdict = all(r.status == "certified" for r in records)
    return CertificateReport(records, conclusions, verdict)


# --------------------------------------------------------------- remark
RATIONAL_POINT_XS = frozenset({Fraction(0), Fraction(1, 2), Fraction(1), Fraction(-2), Fraction(3)})


def remark_check(report: CertificateReport | None = None) -> dict:
    """Compare rational resultant roots with the x-coordinates of rational points.

    Observational: discrepancies are reported, not raised.
    """
    report = report or persistence_certificate()
    half = Fraction(1, 2)
    other_half = (half, Fraction(-3, 4))
    roots_by_function = {}
    half_records = []
    half_via_pole_point = True
    for rec in report.functions:
        roots = upoly.rational_roots(rec.resultant.to_univariate("x"))
        roots_by_function[rec.name] = [str(r) for r in roots]
        if half in roots:
            half_records.append(rec.name)
            on_other = rec.function.evaluate({"x": other_half[0], "y": other_half[1]}) == 0
            on_stable = rec.function.evaluate({"x": half, "y": DISTINGUISHED[1]}) == 0
            half_via_pole_point = half_via_pole_point and on_other and not on_stable
    all_roots = {Fraction(r) for rs in roots_by_function.values() for r in rs}
    forms = intersection_formulas()
    dtau_zero_at_other = forms.D_tau.evaluate({"x": other_half[0], "y": other_half[1]}) == 0
    return {
        "roots_by_function": roots_by_function,
        "all_rational_roots": [str(r) for r in sorted(all_roots)],
        "subset_of_rational_point_xs": all_roots <= RATIONAL_POINT_XS,
        "roots_other_than_half": [str(r) for r in sorted(all_roots - {half})],
        "roots_other_than_half_are_0_1_-2_3": all_roots - {half} == {Fraction(0), Fraction(1), Fraction(-2), Fraction(3)},
        "half_records": half_records,
        "half_only_in_D_tau_record": half_records == ["D_tau"],
        "half_only_at_D_tau_pole_point": half_via_pole_point and dtau_zero_at_other,
        "half_never_stable_zero": all(
            not r.on_stable_branch for rec in report.functions for r in rec.roots_in_01 if r.lo == half
        ),
    }


def stable_samples(n: int):
    """n stable-branch points at x = k / (n + 1), k = 1..n (exact where possible)."""
    return [point_on_branch(Fraction(k, n + 1)) for k in range(1, n + 1)]
