from fractions import Fraction

from hopf_tensegrity.group import (
    C1,
    C2,
    EYE,
    G2,
    G3,
    RHO_C1,
    RHO_C2,
    S,
    build_group_and_rep,
    check_homomorphism,
    compose,
    cycle,
    cycle_notation,
    det,
    evaluate_matrix,
    inverse,
    matmul,
    stress_matrix,
    transpose,
)


def test_generator_relations():
    assert compose(S, G2) == C1 == cycle(1, 3, 4)
    assert compose(S, G3) == C2 == cycle(2, 4, 3)
    assert compose(S, compose(S, S)) == (1, 2, 3, 4)
    assert cycle_notation(C1) == "(1,3,4)"


def test_representation_is_orthogonal_and_faithful():
    elements, rho = build_group_and_rep()
    assert len(set(elements)) == 12
    mats = {rho[g] for g in elements}
    assert len(mats) == 12
    for g in elements:
        m = rho[g]
        assert matmul(m, transpose(m)) == EYE and det(m) == 1
        assert rho[inverse(g)] == transpose(m)
    assert rho[C1] == RHO_C1 and rho[C2] == RHO_C2


def test_homomorphism_all_products():
    assert check_homomorphism() == 144


def test_coset_ordering():
    elements, _ = build_group_and_rep()
    s2 = compose(S, S)
    for k in range(4):
        g = elements[3 * k]
        assert elements[3 * k + 1] == compose(g, S) and elements[3 * k + 2] == compose(g, s2)
    assert elements[3] == C1 and elements[6] == C2


def test_stress_matrix_symmetric_and_values():
    om = stress_matrix()
    for i in range(3):
        for j in range(3):
            assert om[i][j] == om[j][i]
    m = evaluate_matrix(om, Fraction(0), Fraction(1))
    assert det(m) == -48
