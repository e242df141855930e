"""The alternating group A4, its 3-dimensional representation, and the stress matrix.

Permutations are tuples ``(g(1), g(2), g(3), g(4))`` and compose right to
left: ``(g*h)(i) = g(h(i))``. With that convention g1*g2 = (1,3,4) = c1 and
g1*g3 = (2,4,3) = c2, and rho(g1 g2) = rho(g1) rho(g2).
"""

from __future__ import annotations

from functools import lru_cache

from .exact import MPoly

Matrix = tuple  # 3x3 tuple of tuples of ints

IDENTITY = (1, 2, 3, 4)


def compose(g, h):
    return tuple(g[h[i] - 1] for i in range(4))


def inverse(g):
    inv = [0] * 4
    for i, gi in enumerate(g):
        inv[gi - 1] = i + 1
    return tuple(inv)


def cycle(*points):
    """Permutation tuple from a single cycle in 1-based notation."""
    img = list(IDENTITY)
    for a, b in zip(points, points[1:] + points[:1]):
        img[a - 1] = b
    return tuple(img)


def is_even(g) -> bool:
    inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if g[i] > g[j])
    return inversions % 2 == 0


def cycle_notation(g) -> str:
    seen, parts = set(), []
    for start in range(1, 5):
        if start in seen or g[start - 1] == start:
            continue
        cyc, k = [], start
        while k not in seen:
            seen.add(k)
            cyc.append(k)
            k = g[k - 1]
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


S = cycle(1, 2, 3)
C1 = cycle(1, 3, 4)
C2 = cycle(2, 4, 3)
G2 = compose(cycle(1, 2), cycle(3, 4))
G3 = compose(cycle(1, 3), cycle(2, 4))

RHO_G1 = ((0, 1, 0), (0, 0, -1), (-1, 0, 0))
RHO_G2 = ((1, 0, 0), (0, -1, 0), (0, 0, -1))
RHO_G3 = ((-1, 0, 0), (0, 1, 0), (0, 0, -1))
RHO_C1 = ((0, -1, 0), (0, 0, 1), (-1, 0, 0))
RHO_C2 = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
EYE = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def matvec(a, v):
    return tuple(sum(a[i][k] * v[k] for k in range(3)) for i in range(3))


def transpose(a):
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def det(a) -> int:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


@lru_cache(maxsize=None)
def build_group_and_rep():
    """All 12 elements of A4 with their representation matrices.

    Elements are ordered coset by coset: [e, s, s^2, c1, c1 s, c1 s^2, ...],
    so node indices 3k, 3k+1, 3k+2 form the k-th strut triangle and
    triangles 0 and 1 are the pair Delta, Delta'.
    """
    rho = {IDENTITY: EYE}
    frontier = [IDENTITY]
    gens = ((S, RHO_G1), (G2, RHO_G2), (G3, RHO_G3))
    while frontier:
        nxt = []
        for g in frontier:
            for t, rt in gens:
                h = compose(g, t)
                m = matmul(rho[g], rt)
                if h in rho:
                    if rho[h] != m:
                        raise AssertionError(f"representation not well defined at {cycle_notation(h)}")
                    continue
                rho[h] = m
                nxt.append(h)
        frontier = nxt
    if len(rho) != 12 or not all(is_even(g) for g in rho):
        raise AssertionError("generators did not produce A4")
    if rho[C1] != RHO_C1 or rho[C2] != RHO_C2:
        raise AssertionError("rho(c1) / rho(c2) disagree with the printed matrices")

    # coset-ordered listing; coset representatives in order e, c1, c2, then the rest
    order = [IDENTITY, C1, C2] + sorted(rho)
    s2 = compose(S, S)
    elements = []
    for g in order:
        if g in elements:
            continue
        elements.extend([g, compose(g, S), compose(g, s2)])
    return elements, rho


def check_homomorphism() -> int:
    """Exhaustively verify rho(gh) = rho(g) rho(h); returns the number of products checked."""
    elements, rho = build_group_and_rep()
    n = 0
    for g in elements:
        for h in elements:
            if rho[compose(g, h)] != matmul(rho[g], rho[h]):
                raise AssertionError(f"rho fails at {cycle_notation(g)}, {cycle_notation(h)}")
            n += 1
    return n


VARS = ("x", "y")


@lru_cache(maxsize=None)
def stress_matrix():
    """Omega(x, y) as a 3x3 tuple of MPoly in (x, y)."""
    x, y = MPoly.gens(VARS)
    _, rho = build_group_and_rep()

    def sym(g):
        m = rho[g]
        mt = rho[inverse(g)]
        return [[m[i][j] + mt[i][j] for j in range(3)] for i in range(3)]

    a, b, c = sym(C1), sym(C2), sym(S)
    return tuple(
        tuple(
            x * a[i][j] + (1 - x) * b[i][j] + y * c[i][j] - (2 * (1 + y) if i == j else 0)
            for j in range(3)
        )
        for i in range(3)
    )


def evaluate_matrix(m, x, y):
    return tuple(tuple(e.evaluate({"x": x, "y": y}) for e in row) for row in m)
