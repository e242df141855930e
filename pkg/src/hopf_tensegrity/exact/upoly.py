"""Dense univariate polynomials over Q as ascending lists of Fractions.

``[]`` is the zero polynomial; otherwise the last entry is nonzero.
"""

from __future__ import annotations

import math
from fractions import Fraction


def trim(p):
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([a * c for a in p])


def divmod_(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    dq = len(q) - 1
    lc = q[-1]
    if len(p) <= dq:
        return [], trim(p)
    quo = [Fraction(0)] * (len(p) - dq)
    for k in range(len(p) - 1, dq - 1, -1):
        c = p[k] / lc
        quo[k - dq] = c
        if c:
            for i, b in enumerate(q):
                p[k - dq + i] -= c * b
    return trim(quo), trim(p[:dq])


def rem(p, q):
    return divmod_(p, q)[1]


def monic(p):
    return [c / p[-1] for c in p] if p else []


def gcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, rem(p, q)
    return monic(p)


def derivative(p):
    return trim([c * k for k, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign_at(p, x) -> int:
    v = evaluate(p, x)
    return (v > 0) - (v < 0)


def squarefree_part(p):
    """p / gcd(p, p'), made monic."""
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    g = gcd(p, derivative(p))
    return monic(divmod_(p, g)[0])


def squarefree_decomposition(p):
    """Yun's algorithm: returns [a1, a2, ...] with p = lc * prod(a_i ** i).

    The a_i are monic, squarefree and pairwise coprime; roots of a_i have
    multiplicity exactly i in p.
    """
    p = trim(p)
    if len(p) <= 1:
        return []
    dp = derivative(p)
    a = gcd(p, dp)
    b = divmod_(p, a)[0]
    c = divmod_(dp, a)[0]
    d = sub(c, derivative(b))
    out = []
    while len(b) > 1:
        a = gcd(b, d)
        out.append(a)
        b = divmod_(b, a)[0]
        c = divmod_(d, a)[0]
        d = sub(c, derivative(b))
    return out


def primitive_integer(p):
    """Scale p to coprime integer coefficients with positive leading term."""
    p = trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p):
    """Distinct rational roots of p (rational-root theorem), sorted.

    Works on the squarefree part with zero roots stripped first so the
    constant term is as small as possible.
    """
    p = trim(p)
    if len(p) <= 1:
        return []
    roots = []
    if not p[0]:
        roots.append(Fraction(0))
        while p and not p[0]:
            p = p[1:]
    q = primitive_integer(squarefree_part(p))
    if len(q) > 1:
        for num in _divisors(q[0]):
            for den in _divisors(q[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand not in roots and not evaluate(q, cand):
                        roots.append(cand)
    return sorted(roots)


def multiplicity(p, r) -> int:
    """Multiplicity of the rational root r in p (0 if not a root)."""
    p = trim(p)
    m = 0
    lin = [-Fraction(r), Fraction(1)]
    while p:
        quo, rest = divmod_(p, lin)
        if rest:
            break
        m += 1
        p = quo
    return m
