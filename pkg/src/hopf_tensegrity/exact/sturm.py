"""Certified real-root isolation by Sturm sequences.

For a squarefree p with Sturm chain p, p', -rem(...), ... the number of
distinct roots in the half-open interval (a, b] equals V(a) - V(b), where V
counts sign variations with zeros dropped. This holds for arbitrary a < b
(V is right-continuous at roots of p), so window endpoints may be roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import upoly
from .interval import Interval
from .poly import MPoly


@dataclass(frozen=True)
class IsolatingInterval:
    lo: Fraction
    hi: Fraction
    multiplicity: int | None = None

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "multiplicity": self.multiplicity}


def _coeffs(f):
    if isinstance(f, MPoly):
        return f.to_univariate()
    return upoly.trim(f)


def sturm_chain(p):
    p = upoly.trim(p)
    chain = [p, upoly.derivative(p)]
    while chain[-1]:
        r = upoly.rem(chain[-2], chain[-1])
        chain.append(upoly.neg(r))
    chain.pop()
    return chain


def variations(chain, x) -> int:
    signs = [s for s in (upoly.sign_at(q, x) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain, lo, hi) -> int:
    """Distinct roots of chain[0] in the open interval (lo, hi)."""
    n = variations(chain, lo) - variations(chain, hi)
    if upoly.evaluate(chain[0], hi) == 0:
        n -= 1
    return n


def sturm_isolate(f, window: Interval, max_depth: int = 400) -> list:
    """Isolate the distinct real roots of ``f`` in the open window.

    Returns sorted, pairwise-disjoint ``IsolatingInterval`` records. Each
    non-degenerate record has f(lo), f(hi) nonzero with exactly one root
    of f strictly between; rational roots are returned as degenerate
    intervals. Multiplicities come from the squarefree decomposition.
    """
    p = _coeffs(f)
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = Fraction(window.lo), Fraction(window.hi)
    if len(p) == 1 or lo >= hi:
        return []
    sf = upoly.squarefree_part(p)
    chain = sturm_chain(sf)
    rational = [r for r in upoly.rational_roots(sf) if lo < r < hi]

    found = []
    stack = [(lo, hi, count_roots(chain, lo, hi), 0)]
    while stack:
        a, b, n, depth = stack.pop()
        if n == 0:
            continue
        ends_clean = upoly.evaluate(sf, a) != 0 and upoly.evaluate(sf, b) != 0
        if n == 1 and ends_clean:
            exact = [r for r in rational if a < r < b]
            if exact:
                found.append((exact[0], exact[0]))
            else:
                found.append((a, b))
            continue
        if depth > max_depth:
            raise RuntimeError("root isolation did not converge")
        m = (a + b) / 2
        if upoly.evaluate(sf, m) == 0:
            found.append((m, m))
        stack.append((m, b, count_roots(chain, m, b), depth + 1))
        stack.append((a, m, count_roots(chain, a, m), depth + 1))

    decomposition = upoly.squarefree_decomposition(p)
    out = []
    for a, b in sorted(found):
        out.append(IsolatingInterval(a, b, _multiplicity_in(decomposition, a, b)))
    return out


def _multiplicity_in(decomposition, a, b):
    for k, factor in enumerate(decomposition, start=1):
        if len(factor) <= 1:
            continue
        if a == b:
            if upoly.evaluate(factor, a) == 0:
                return k
        elif count_roots(sturm_chain(factor), a, b) == 1:
            return k
    return None


def refine(f, root: IsolatingInterval, width) -> IsolatingInterval:
    """Bisect an isolating interval until it is narrower than ``width``."""
    if root.is_exact:
        return root
    p = upoly.squarefree_part(_coeffs(f))
    a, b = root.lo, root.hi
    sa = upoly.sign_at(p, a)
    width = Fraction(width)
    while b - a > width:
        m = (a + b) / 2
        sm = upoly.sign_at(p, m)
        if sm == 0:
            return IsolatingInterval(m, m, root.multiplicity)
        if sm == sa:
            a = m
        else:
            b = m
    return IsolatingInterval(a, b, root.multiplicity)
