"""Sparse multivariate polynomials with exact rational coefficients.

An ``MPoly`` lives over a fixed, ordered tuple of variable names; terms map
exponent vectors (one entry per variable) to nonzero ``Fraction`` values.
Arithmetic between polynomials requires identical variable tuples --
``with_vars`` performs the (explicit) change of ring.

Monomial order for the division algorithm is lex in the order of ``vars``.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = ["MPoly", "as_fraction"]


def as_fraction(value) -> Fraction:
    """Convert int / Fraction / exact decimal string to ``Fraction``.

    Floats are converted exactly (binary value), never rounded.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def _add_exp(a, b):
    return tuple(i + j for i, j in zip(a, b))


class MPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for variables {self.vars}")
            c = as_fraction(coeff)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        # trusted constructor: terms already pruned, exponents already tuples
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # ---------------------------------------------------------------- builders
    @classmethod
    def const(cls, value, vars: Sequence[str]) -> "MPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): value})

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MPoly":
        return cls._raw(tuple(vars), {})

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "MPoly":
        vars = tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if sum(exp) != 1:
            raise ValueError(f"{name!r} is not one of {vars}")
        return cls._raw(vars, {exp: Fraction(1)})

    @classmethod
    def gens(cls, vars: Sequence[str]) -> tuple:
        return tuple(cls.var(v, vars) for v in vars)

    @classmethod
    def parse(cls, text: str, vars: Sequence[str]) -> "MPoly":
        """Build a polynomial from a Python-style expression.

        Accepts ``+ - * / **`` (and ``^`` as power), integer literals and the
        given variable names. Division is only allowed by constants.

        >>> str(MPoly.parse("(x+y)*(x-y)", ("x", "y")))
        'x^2 - y^2'
        """
        vars = tuple(vars)
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return cls._from_ast(tree.body, vars)

    @classmethod
    def _from_ast(cls, node, vars):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return cls.const(node.value, vars)
        if isinstance(node, ast.Name):
            return cls.var(node.id, vars)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = cls._from_ast(node.operand, vars)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            left = cls._from_ast(node.left, vars)
            if isinstance(node.op, ast.Pow):
                exp = cls._from_ast(node.right, vars)
                if not exp.is_constant() or exp.constant_value().denominator != 1:
                    raise ValueError("exponent must be a non-negative integer")
                return left ** int(exp.constant_value())
            right = cls._from_ast(node.right, vars)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise ValueError("division only by nonzero constants")
                return left * (1 / right.constant_value())
        raise ValueError(f"unsupported expression element: {ast.dump(node)}")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence["MPoly"], var: str) -> "MPoly":
        """Inverse of ``coeffs``: sum of coeffs[k] * var**k."""
        if not coeffs:
            raise ValueError("need at least one coefficient to know the ring")
        vars = coeffs[0].vars
        idx = vars.index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            for exp, val in c.terms.items():
                if exp[idx]:
                    raise ValueError(f"coefficient {k} still contains {var}")
                e = list(exp)
                e[idx] = k
                terms[tuple(e)] = val
        return cls._raw(vars, terms)

    @classmethod
    def from_univariate(cls, coeffs: Sequence, var: str, vars: Sequence[str] | None = None) -> "MPoly":
        """Polynomial from ascending scalar coefficients in one variable."""
        vars = tuple(vars) if vars is not None else (var,)
        idx = vars.index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            exp = [0] * len(vars)
            exp[idx] = k
            terms[tuple(exp)] = c
        return cls(vars, terms)

    # ------------------------------------------------------------- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``. The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        idx = self.vars.index(var)
        return max(e[idx] for e in self.terms)

    def used_vars(self) -> tuple:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def coeffs(self, var: str) -> list:
        """Coefficients in ``var`` (ascending), each an MPoly free of ``var``."""
        idx = self.vars.index(var)
        buckets = [dict() for _ in range(self.degree(var) + 1)]
        for exp, c in self.terms.items():
            e = list(exp)
            k = e[idx]
            e[idx] = 0
            buckets[k][tuple(e)] = c
        return [MPoly._raw(self.vars, b) for b in buckets]

    def leading_coeff(self, var: str) -> "MPoly":
        return self.coeffs(var)[-1]

    def to_univariate(self, var: str | None = None) -> list:
        """Ascending Fraction coefficients; all other variables must be absent."""
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"not univariate: uses {used}")
            var = used[0] if used else self.vars[0]
        elif set(used) - {var}:
            raise ValueError(f"not univariate in {var}: uses {used}")
        if not self.terms:
            return []
        idx = self.vars.index(var)
        out = [Fraction(0)] * (self.degree(var) + 1)
        for exp, c in self.terms.items():
            out[exp[idx]] = c
        return out

    def leading_term(self):
        """(exponent, coefficient) of the lex-largest term."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    # ----------------------------------------------------------------- rings
    def with_vars(self, vars: Sequence[str]) -> "MPoly":
        """Re-express in another variable tuple (reorder, add or drop unused vars)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        missing = set(self.used_vars()) - set(vars)
        if missing:
            raise ValueError(f"cannot drop variables still in use: {sorted(missing)}")
        pos = [self.vars.index(v) if v in self.vars else None for v in vars]
        terms = {tuple(exp[p] if p is not None else 0 for p in pos): c for exp, c in self.terms.items()}
        return MPoly._raw(vars, terms)

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"incompatible variables {self.vars} vs {other.vars}; use with_vars()")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other, self.vars)
        return NotImplemented

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return MPoly._raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return MPoly._raw(self.vars, {})
        terms: dict = {}
        get = terms.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                terms[e] = get(e, 0) + c1 * c2
        return MPoly._raw(self.vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "MPoly":
        c = as_fraction(c)
        if not c:
            return MPoly._raw(self.vars, {})
        return MPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    # --------------------------------------------------------------- division
    def divmod(self, divisor: "MPoly"):
        """Multivariate division by a single polynomial (lex order).

        Returns (q, r) with self = q*divisor + r and no term of r divisible by
        the leading term of divisor. With a single divisor, r == 0 exactly
        when divisor divides self.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_exp, lt_c = divisor.leading_term()
        p = dict(self.terms)
        q: dict = {}
        r: dict = {}
        while p:
            exp = max(p)
            c = p[exp]
            if all(a >= b for a, b in zip(exp, lt_exp)):
                t_exp = tuple(a - b for a, b in zip(exp, lt_exp))
                t_c = c / lt_c
                q[t_exp] = q.get(t_exp, 0) + t_c
                for e2, c2 in divisor.terms.items():
                    e = _add_exp(t_exp, e2)
                    v = p.get(e, 0) - t_c * c2
                    if v:
                        p[e] = v
                    else:
                        p.pop(e, None)
            else:
                r[exp] = c
                del p[exp]
        return MPoly._raw(self.vars, {e: c for e, c in q.items() if c}), MPoly._raw(self.vars, r)

    def exact_div(self, divisor: "MPoly") -> "MPoly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def rem_in(self, modulus: "MPoly", var: str) -> "MPoly":
        """Remainder of division by ``modulus`` viewed as a polynomial in ``var``.

        The leading coefficient of ``modulus`` in ``var`` must be a nonzero
        constant so that no pseudo-division factor enters.
        """
        m = modulus.coeffs(var)
        lc = m[-1]
        if not lc.is_constant() or lc.is_zero():
            raise ValueError(f"leading coefficient in {var} must be a nonzero constant")
        inv = 1 / lc.constant_value()
        k = len(m) - 1
        cs = self.coeffs(var) if self.terms else []
        for top in range(len(cs) - 1, k - 1, -1):
            t = cs[top]
            if t.is_zero():
                continue
            t = t.scale(inv)
            for i in range(k):
                if not m[i].is_zero():
                    cs[top - k + i] = cs[top - k + i] - t * m[i]
            cs[top] = MPoly.zero(self.vars)
        cs = cs[:k]
        if not cs:
            return MPoly.zero(self.vars)
        return MPoly.from_coeffs(cs, var)

    # ------------------------------------------------------------- calculus
    def diff(self, var: str) -> "MPoly":
        idx = self.vars.index(var)
        terms = {}
        for exp, c in self.terms.items():
            if exp[idx]:
                e = list(exp)
                e[idx] -= 1
                terms[tuple(e)] = c * exp[idx]
        return MPoly._raw(self.vars, terms)

    # ------------------------------------------------------------ evaluation
    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a full assignment of scalars.

        Scalars may be Fraction, int, float, or anything closed under ``+``,
        ``*`` and integer ``**`` that accepts Fraction coefficients
        (e.g. ``Interval``).
        """
        missing = [v for v in self.used_vars() if v not in values]
        if missing:
            raise ValueError(f"no value for {missing}")
        vals = [values.get(v, 0) for v in self.vars]
        # powers are cached per variable; a term is coefficient * product of powers
        powers = [dict() for _ in self.vars]
        total = None
        for exp, c in self.terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    pw = powers[i].get(e)
                    if pw is None:
                        pw = vals[i] ** e
                        powers[i][e] = pw
                    term = term * pw
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def __call__(self, **values):
        return self.evaluate(values)

    def subs(self, values: Mapping[str, object]) -> "MPoly":
        """Substitute exact scalars for some variables; the ring is unchanged."""
        vals = {self.vars.index(v): as_fraction(x) for v, x in values.items()}
        terms: dict = {}
        for exp, c in self.terms.items():
            e = list(exp)
            for i, x in vals.items():
                c = c * x ** e[i]
                e[i] = 0
            e = tuple(e)
            terms[e] = terms.get(e, 0) + c
        return MPoly._raw(self.vars, {e: c for e, c in terms.items() if c})

    def compose(self, mapping: Mapping[str, "MPoly"], vars: Sequence[str]) -> "MPoly":
        """Substitute a polynomial (over ``vars``) for every variable of self."""
        vars = tuple(vars)
        images = [mapping[v] if v in mapping else None for v in self.vars]
        for v, img in zip(self.vars, images):
            if img is None and v in self.used_vars():
                raise ValueError(f"no image for variable {v}")
        powers = [dict() for _ in self.vars]
        result = MPoly.zero(vars)
        for exp, c in self.terms.items():
            term = MPoly.const(c, vars)
            for i, e in enumerate(exp):
                if e:
                    if e not in powers[i]:
                        powers[i][e] = images[i] ** e
                    term = term * powers[i][e]
            result = result + term
        return result

    # --------------------------------------------------------------- dunder
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MPoly({self.vars}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[exp]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def coefficient_strings(self, var: str) -> list:
        """Ascending coefficients as strings (for JSON); univariate only."""
        return [str(c) for c in self.to_univariate(var)]


def product(polys: Iterable[MPoly], vars: Sequence[str]) -> MPoly:
    out = MPoly.const(1, vars)
    for p in polys:
        out = out * p
    return out
