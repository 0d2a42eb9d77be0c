from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from periodic_sca.linalg import (
    LatticeReducer,
    det_bareiss,
    det_cofactor,
    in_lattice,
    inverse_exact,
    lcm_rationals,
    mat_vec,
    mobius,
    solve_exact,
)

entries = st.integers(-20, 20)
square4 = st.lists(st.lists(entries, min_size=4, max_size=4), min_size=4, max_size=4)


@given(square4)
def test_bareiss_matches_cofactor(m):
    assert det_bareiss(m) == det_cofactor(m)


@given(square4, st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_solve_recovers_solution(m, x):
    if det_bareiss(m) == 0:
        return
    assert solve_exact(m, mat_vec(m, x)) == [Fraction(v) for v in x]


@given(square4)
def test_inverse_is_exact(m):
    if det_bareiss(m) == 0:
        return
    inv = inverse_exact(m)
    prod = [[sum(Fraction(m[i][k]) * inv[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
    assert prod == [[int(i == j) for j in range(4)] for i in range(4)]


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_lattice_membership(x):
    m = [[2, 1, 0], [0, 3, 1], [0, 0, 4]]
    v = mat_vec(m, x)
    assert in_lattice(m, v)
    assert not in_lattice(m, [v[0] + 1, v[1], v[2]])
    red = LatticeReducer(m)
    assert red.contains(v) and red.reduce(v) == red.reduce([0, 0, 0])


def test_mobius_values():
    assert [mobius(k) for k in (1, 4, 6, 30)] == [1, 0, 1, -1]


def test_lcm_of_rational_ratios():
    ratios = [Fraction(97, 35), Fraction(194, 9), Fraction(194, 23), Fraction(194, 17)]
    assert lcm_rationals(ratios) == 194


def test_determinant_of_level_set_matrix():
    from periodic_sca.angle import f_matrix
    from periodic_sca.content import SolitonContent
    mu = SolitonContent.from_partitions([(3, 3, 2, 2, 2), (4, 1)], 24)
    assert det_bareiss(f_matrix(mu)) == 4656
