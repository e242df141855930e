from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_tensegrity.exact import Interval, MPoly, interval_eval
from hopf_tensegrity.exact.poly import product

V = ("x", "y")
X, Y = sp.symbols("x y")

coef = st.integers(-6, 6)
poly_terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coef, max_size=6)


def to_sympy(p: MPoly):
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * X**e[0] * Y**e[1] for e, c in p.terms.items()))


def from_terms(t):
    return MPoly(V, t)


def test_parse_and_print():
    p = MPoly.parse("x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y", V)
    assert str(p) == "x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y"
    assert MPoly.parse(str(p), V) == p
    assert MPoly.parse("(x + 1)**2 / 2", V) == MPoly.parse("x^2/2 + x + 1/2", V)


def test_parse_rejects_unknowns():
    with pytest.raises(ValueError):
        MPoly.parse("z + 1", V)
    with pytest.raises(ValueError):
        MPoly.parse("1 / x", V)


def test_zero_and_constants():
    z = MPoly.zero(V)
    assert z.is_zero() and z.degree() == -1
    assert MPoly.const(5, V) == 5
    assert MPoly.const(Fraction(3, 4), V).constant_value() == Fraction(3, 4)


def test_mixing_variable_sets_raises():
    with pytest.raises(ValueError):
        MPoly.var("x", ("x",)) + MPoly.var("x", V)


@given(poly_terms, poly_terms)
@settings(max_examples=60, deadline=None)
def test_ring_ops_match_sympy(a, b):
    f, g = from_terms(a), from_terms(b)
    assert sp.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    assert sp.expand(to_sympy(f - g) - (to_sympy(f) - to_sympy(g))) == 0
    assert sp.expand(to_sympy(f**2) - to_sympy(f) ** 2) == 0


@given(poly_terms, poly_terms)
@settings(max_examples=60, deadline=None)
def test_divmod_reconstructs(a, b):
    f, g = from_terms(a), from_terms(b)
    if g.is_zero():
        return
    q, r = f.divmod(g)
    assert q * g + r == f


def test_exact_div():
    f = MPoly.parse("(x - y)*(x + 2*y + 1)", V)
    assert f.exact_div(MPoly.parse("x - y", V)) == MPoly.parse("x + 2*y + 1", V)
    with pytest.raises(ArithmeticError):
        f.exact_div(MPoly.parse("x + 7", V))


@given(poly_terms)
@settings(max_examples=60, deadline=None)
def test_rem_in_agrees_with_sympy(a):
    f = from_terms(a)
    d = MPoly.parse("x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y", V)
    r = f.rem_in(d, "y")
    assert r.degree("y") < 2
    expected = sp.rem(to_sympy(f), to_sympy(d), Y)
    assert sp.expand(to_sympy(r) - expected) == 0


def test_calculus_and_substitution():
    f = MPoly.parse("x^3*y - 2*x*y^2 + 5", V)
    assert f.diff("x") == MPoly.parse("3*x^2*y - 2*y^2", V)
    assert f.subs({"x": 2}) == MPoly.parse("8*y - 4*y^2 + 5", V)
    assert f(x=1, y=1) == 4
    u, v = MPoly.gens(("u", "v"))
    g = f.compose({"x": u + v, "y": u * v}, ("u", "v"))
    assert g.evaluate({"u": 1, "v": 2}) == f.evaluate({"x": 3, "y": 2})


def test_coefficients_views():
    f = MPoly.parse("3*x^2*y^2 + x*y - 7", V)
    cs = f.coeffs("y")
    assert [str(c) for c in cs] == ["-7", "x", "3*x^2"]
    assert MPoly.from_coeffs(cs, "y") == f
    assert f.leading_coeff("y") == MPoly.parse("3*x^2", V)
    g = MPoly.parse("2*x^2 - 1", V)
    assert g.to_univariate("x") == [-1, 0, 2]
    assert g.with_vars(("x",)).vars == ("x",)
    assert product([MPoly.parse("x", V), MPoly.parse("y + 1", V)], V) == MPoly.parse("x*y + x", V)


@given(poly_terms, st.fractions(-3, 3, max_denominator=8), st.fractions(-3, 3, max_denominator=8))
@settings(max_examples=60, deadline=None)
def test_interval_eval_encloses(a, x0, y0):
    f = from_terms(a)
    box = {"x": Interval(x0, x0 + Fraction(1, 16)), "y": Interval(y0 - Fraction(1, 32), y0)}
    enc = interval_eval(f, box)
    for xs in (x0, x0 + Fraction(1, 32), x0 + Fraction(1, 16)):
        for ys in (y0 - Fraction(1, 32), y0 - Fraction(1, 64), y0):
            assert enc.contains(f.evaluate({"x": xs, "y": ys}))


def test_float_evaluation():
    f = MPoly.parse("x^2 - 2", V)
    assert abs(f.evaluate({"x": 2**0.5, "y": 0.0})) < 1e-15
