import itertools
from fractions import Fraction

import pytest
import sympy as sp

from hopf_tensegrity import elliptic
from hopf_tensegrity.elliptic import E0, E_LONG, EllipticPoint, WeierstrassModel
from hopf_tensegrity.errors import DomainError, NotOnCurveError
from hopf_tensegrity.spectral import AFFINE_RATIONAL_POINTS, StressPoint, point_on_branch

IMAGES = {
    (1, 0): (-708, 0),
    (3, 3): (-276, -12960),
    (Fraction(1, 2), Fraction(-1, 3)): (-276, 12960),
    (0, 0): (156, 5184),
    (-2, 3): (264, 0),
    (3, -2): (444, 0),
    (1, -1): (588, -7776),
    (Fraction(1, 2), Fraction(-3, 4)): (1884, -77760),
    (-2, -2): (1884, 77760),
}


@pytest.fixture(scope="module")
def torsion():
    return elliptic.torsion_subgroup()


def test_images_of_rational_points():
    assert len(IMAGES) == len(AFFINE_RATIONAL_POINTS)
    for (x, y), (u, v) in IMAGES.items():
        p = elliptic.birational_map(StressPoint.given(Fraction(x), Fraction(y)))
        assert (p.u, p.v) == (u, v)


def test_birational_identity_with_sympy():
    assert elliptic.verify_birational_identity()
    x, y = sp.symbols("x y")
    d = x**2 * y + 3 * x**2 - x * y - 3 * y**2 - 3 * x - 3 * y
    num = sp.sympify(str(elliptic.birational_numerator()).replace("^", "**"))
    q, r = sp.div(num, d, x, y)
    assert r == 0 and q != 0


def test_map_guards():
    with pytest.raises(NotOnCurveError):
        elliptic.birational_map(StressPoint.given(0, 1))
    with pytest.raises(TypeError):
        elliptic.birational_map(point_on_branch(0.3))


def test_exceptional_line():
    # the map's denominator 2x - 3y - 3 meets d = 0 only at (0, -1), i.e. (0:-1:1)
    x, y = sp.symbols("x y")
    sols = sp.solve([x**2 * y + 3 * x**2 - x * y - 3 * y**2 - 3 * x - 3 * y, 2 * x - 3 * y - 3], [x, y])
    assert sols == [(0, -1)]
    with pytest.raises(DomainError):
        elliptic.birational_map(StressPoint.given(0, -1))


def test_invariants():
    assert E_LONG.c4**3 - E_LONG.c6**2 == 1728 * E_LONG.discriminant
    assert E0.c4**3 - E0.c6**2 == 1728 * E0.discriminant
    assert (E_LONG.c4, E_LONG.c6) == (14224, -1536832)
    assert (E0.c4, E0.c6) == (18434304, -71702433792)
    assert elliptic.model_invariants_check()["scale_factor"] == "6"
    with pytest.raises(ValueError):
        WeierstrassModel(a4=0, a6=0)


def test_group_axioms(torsion):
    O = EllipticPoint.identity()
    pts = torsion.elements
    for p in pts:
        assert p + O == p and p + (-p) == O
    for p, q in itertools.product(pts, repeat=2):
        assert p + q == q + p
    for p, q, r in itertools.islice(itertools.product(pts, repeat=3), 0, None, 7):
        assert (p + q) + r == p + (q + r)


def test_long_model_group_law():
    p = EllipticPoint(0, 0, E_LONG)
    assert p.order() == 3
    assert p + p == -p and p * 3 == EllipticPoint.identity(E_LONG)
    with pytest.raises(ValueError):
        p + EllipticPoint(-708, 0, E0)


def test_torsion_structure(torsion):
    assert len(torsion.elements) == 12 and torsion.structure == (2, 6)
    orders = sorted(torsion.orders.values())
    assert orders == [1, 2, 2, 2, 3, 3, 6, 6, 6, 6, 6, 6]
    twos = sorted(p.u for p in torsion.elements if torsion.orders[p] == 2)
    assert twos == elliptic.two_torsion_roots() == [-708, 264, 444]
    assert all(elliptic.nagell_lutz_ok(p) for p in torsion.elements)


def test_points_without_affine_preimage(torsion):
    missing = {(p.u, p.v) for p in torsion.unseeded()}
    assert missing == {(156, -5184), (588, 7776)}
    doc = torsion.to_json()
    assert doc["distinguished_image"] == ["-276", "12960"]
    assert doc["model"] == {"a": [-384048, 82988928]}
    assert len(doc["points"]) == 11


def test_scalar_multiplication():
    p = elliptic.birational_map(StressPoint.given(Fraction(1, 2), Fraction(-1, 3)))
    assert p * 6 == EllipticPoint.identity()
    assert p * -1 == -p
    assert p * 7 == p


def test_structure_rejects_non_product():
    # (Z/2)^3 is not of the form Z/m x Z/n
    orders = {i: (1 if i == 0 else 2) for i in range(8)}
    with pytest.raises(AssertionError):
        elliptic.group_structure(orders)
