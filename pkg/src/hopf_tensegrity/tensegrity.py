"""Realizing the Cayley graph of A4 as a tensegrity in R^3.

Nodes are rho(g) p0 for g in A4, struts join g and g s, cables join g with
g c1 (stress x) and g c2 (stress 1 - x). The struts form four triangles,
one per left coset of <s>.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import NotOnCurveError
from .exact import MPoly
from .group import C1, C2, S, VARS, build_group_and_rep, compose, evaluate_matrix, matvec, stress_matrix
from .spectral import StressPoint, point_on_branch, require_on_curve

P0_TEXT = (
    "-2*x*y + 3*y^2 - 6*x + 2*y + 3",
    "-4*x^2 - 4*x*y + 3*y^2 + 4*x + 10*y + 3",
    "4*x^2 - 3*y^2 - 4*x + 3",
)

STRUT, CABLE_C1, CABLE_C2 = "strut", "cable_c1", "cable_c2"


@lru_cache(maxsize=None)
def null_vector_poly():
    """The polynomial kernel vector p0(x, y) of Omega on d = 0."""
    return tuple(MPoly.parse(t, VARS) for t in P0_TEXT)


def _kernel_vector(m):
    """A nonzero kernel vector of a 3x3 matrix by Gaussian elimination.

    Exact for Fraction entries. Float entries use partial pivoting and
    treat pivots below 1e-9 (relative) as zero.
    """
    rows = [list(r) for r in m]
    exact = all(isinstance(v, (int, Fraction)) for r in rows for v in r)
    scale = max((abs(float(v)) for r in rows for v in r), default=0.0) or 1.0
    tol = 0 if exact else 1e-9 * scale

    pivots = []
    r = 0
    for c in range(3):
        best = max(range(r, 3), key=lambda i: abs(rows[i][c]), default=None)
        if best is None or abs(rows[best][c]) <= tol:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(3):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == 3:
            break
    free = [c for c in range(3) if c not in pivots]
    if not free:
        return None
    f = free[0]
    vec = [Fraction(0) if exact else 0.0] * 3
    vec[f] = Fraction(1) if exact else 1.0
    for row_idx, c in enumerate(pivots):
        vec[c] = -rows[row_idx][f]
    return tuple(vec)


def _normalize(vec, exact: bool, fix_sign: bool):
    first = next(v for v in vec if v != 0)
    sign = -1 if fix_sign and first < 0 else 1
    if exact:
        # primitive integer direction, e.g. (0, 5/3, 5/3) -> (0, 1, 1)
        den = math.lcm(*(Fraction(v).denominator for v in vec))
        ints = [int(Fraction(v) * den) for v in vec]
        g = math.gcd(*ints)
        return tuple(Fraction(sign * i, g) for i in ints)
    norm = math.sqrt(sum(float(v) ** 2 for v in vec))
    return tuple(sign * float(v) / norm for v in vec)


def null_vector(pt: StressPoint, normalize: bool = True):
    """Kernel vector of Omega at a curve point.

    Uses the polynomial p0 unless it vanishes there, in which case an exact
    (or pivoted numeric) kernel basis vector of Omega(pt) is used, signed so
    its first nonzero coordinate is positive. p0 itself is only rescaled by a
    positive factor: flipping its sign would reflect the whole framework and
    flip every linking number partway along the family. Exact points
    normalize to a primitive integer vector, numeric points to unit length.
    """
    require_on_curve(pt)
    vals = {"x": pt.x, "y": pt.y}
    vec = tuple(c.evaluate(vals) for c in null_vector_poly())
    if pt.exact:
        vanished = all(v == 0 for v in vec)
    else:
        vanished = max(abs(float(v)) for v in vec) < 1e-12
    fallback = vanished
    if vanished:
        vec = _kernel_vector(evaluate_matrix(stress_matrix(), pt.x, pt.y))
        if vec is None:
            raise NotOnCurveError(f"Omega is nonsingular at {pt}: not on spectral curve")
    if not normalize:
        return vec
    return _normalize(vec, pt.exact, fix_sign=fallback)


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    kind: str
    stress: object


@dataclass(frozen=True)
class Framework:
    point: StressPoint
    elements: tuple
    nodes: tuple
    edges: tuple
    normalization: str = field(default="unit")

    @property
    def exact(self) -> bool:
        return self.point.exact

    def triangles(self):
        """Node index triples (g, g s, g s^2) of the four strut triangles."""
        return tuple((3 * k, 3 * k + 1, 3 * k + 2) for k in range(4))

    def edges_of(self, kind):
        return [e for e in self.edges if e.kind == kind]

    def distinct_nodes(self) -> int:
        return len(set(self.nodes))


def realize(x_or_point) -> Framework:
    """Build the framework for a stable-branch x or an explicit StressPoint."""
    if isinstance(x_or_point, StressPoint):
        pt = x_or_point
    else:
        pt = point_on_branch(x_or_point, "stable")
    require_on_curve(pt)
    elements, rho = build_group_and_rep()
    p0 = null_vector(pt)
    nodes = tuple(matvec(rho[g], p0) for g in elements)
    index = {g: i for i, g in enumerate(elements)}
    x, y = pt.x, pt.y
    edges = []
    for kind, gen, stress in ((STRUT, S, y), (CABLE_C1, C1, x), (CABLE_C2, C2, 1 - x)):
        for g in elements:
            edges.append(Edge(index[g], index[compose(g, gen)], kind, stress))
    return Framework(pt, tuple(elements), nodes, tuple(edges), "primitive-integer" if pt.exact else "unit")


def node_forces(fw: Framework):
    """Per-node stress-weighted sum of edge vectors; zero in equilibrium."""
    forces = [[0, 0, 0] for _ in fw.nodes]
    for e in fw.edges:
        pi, pj = fw.nodes[e.i], fw.nodes[e.j]
        for k in range(3):
            f = e.stress * (pj[k] - pi[k])
            forces[e.i][k] += f
            forces[e.j][k] -= f
    return forces


def equilibrium_residual(fw: Framework):
    """Largest force component; exact zero for exact frameworks."""
    forces = node_forces(fw)
    if fw.exact:
        return max(abs(Fraction(c)) for f in forces for c in f)
    return max(abs(float(c)) for f in forces for c in f)


def max_node_norm(fw: Framework) -> float:
    return max(math.sqrt(sum(float(c) ** 2 for c in p)) for p in fw.nodes)


def edge_length(fw: Framework, e: Edge) -> float:
    a, b = fw.nodes[e.i], fw.nodes[e.j]
    return math.sqrt(sum((float(p) - float(q)) ** 2 for p, q in zip(a, b)))


def fmt_float(v) -> str:
    # + 0.0 folds -0.0 into 0.0
    return format(float(v) + 0.0, ".17g")


def scalar_json(v):
    """Exact scalars as "p/q" strings, floats as numbers."""
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    return float(v) + 0.0


def export_geometry(fw: Framework, format: str = "json") -> bytes:
    if format == "json":
        doc = {
            "x": scalar_json(fw.point.x),
            "y": scalar_json(fw.point.y),
            "exact": fw.exact,
            "normalization": fw.normalization,
            "nodes": [[float(c) + 0.0 for c in p] for p in fw.nodes],
            "edges": [
                {"i": e.i, "j": e.j, "kind": e.kind, "stress": scalar_json(e.stress)} for e in fw.edges
            ],
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    if format == "obj":
        lines = [
            f"# A4 tensegrity at x = {fw.point.x}, y = {fw.point.y}",
            f"# normalization: {fw.normalization}",
        ]
        lines += [f"v {fmt_float(p[0])} {fmt_float(p[1])} {fmt_float(p[2])}" for p in fw.nodes]
        for kind in (STRUT, CABLE_C1, CABLE_C2):
            lines.append("# strut" if kind == STRUT else f"# cable {kind[-2:]}")
            lines += [f"l {e.i + 1} {e.j + 1}" for e in fw.edges_of(kind)]
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown geometry format {format!r}")
