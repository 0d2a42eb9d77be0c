from functools import lru_cache
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_sca.angle import (
    AngleVariable,
    angle_equal,
    apply_slide,
    apply_time,
    decompose_level_set,
    direct_scattering,
    dynamical_period,
    f_gamma,
    f_matrices,
    general_case_lattice,
    inverse_scattering,
    lambda_counts,
    lambda_counts_by_enumeration,
    omega_count,
    order_of_symmetry,
    period_table,
    velocity,
)
from periodic_sca.automaton import (
    admissible_generators,
    classify_level_sets,
    default_generators,
    evolve,
    evolve_power,
    format_path,
    orbit_closure,
    parse_path,
    simulated_period,
    soliton_content,
)
from periodic_sca.content import SolitonContent
from periodic_sca.linalg import LatticeReducer
from periodic_sca.verify import is_minimal_period, load_cases, sweep_level_sets

MU24 = SolitonContent.from_partitions([(3, 3, 2, 2, 2), (4, 1)], 24)
MU8 = SolitonContent.from_partitions([(2, 1, 1), (1,)], 8)


@pytest.mark.parametrize("m", range(1, 7))
@pytest.mark.parametrize("p", range(0, 13))
def test_lambda_counts_add_up(m, p):
    total, per = lambda_counts(m, p)
    assert total == comb(p + m - 1, m - 1) == sum(per.values())
    assert {g: c for g, c in per.items() if c} == lambda_counts_by_enumeration(m, p)


def test_lambda_counts_of_the_example_blocks():
    assert lambda_counts(2, 4)[1] == {1: 4, 2: 1}
    assert lambda_counts(3, 7)[0] == 36


def test_bethe_count_and_sums():
    assert omega_count(MU24) == 139680
    for item in load_cases()["counting"]["L6_sums"]:
        terms = [omega_count(SolitonContent.from_partitions([tuple(x) for x in c], 6)) for c in item["contents"]]
        assert terms == item["terms"] and sum(terms) == item["total"]


@pytest.mark.parametrize("n,L", [(1, 8), (2, 8), (2, 7), (3, 6)])
def test_level_set_sizes_match_the_count(n, L):
    checks = sweep_level_sets(n, L)
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_decomposition_of_the_large_level_set():
    deco = decompose_level_set(MU24)
    assert sorted((s.gamma, s.torus_size, s.orbit_count) for s in deco.sectors) == \
        [((1, 1, 1, 1), 4656, 24), ((2, 1, 1, 1), 2328, 12)]
    assert deco.total == deco.omega == 139680


def test_small_level_set_splits_into_two_tori():
    members = set(classify_level_sets(2, 8)[0][MU8])
    assert len(members) == omega_count(MU8) == 144
    sizes = []
    while members:
        orbit = orbit_closure(min(members), 2, default_generators(MU8))
        sizes.append(len(orbit))
        members -= set(orbit)
    assert sizes == [72, 72] and f_matrices(MU8).det_F == 72


def test_period_table_and_minimality():
    case = load_cases()["two-color-l24"]
    p = parse_path(case["path"])
    assert period_table(MU24, (1, 1, 1, 1)) == period_table(MU24, (2, 1, 1, 1))
    for (r, l), N in period_table(MU24, (1, 1, 1, 1)).items():
        assert simulated_period(r, l, p, 2) == N
        assert is_minimal_period(r, l, p, 2, N)


def test_single_color_periods_match_simulation():
    p = parse_path(load_cases()["averages"]["single-color"]["path"])
    sd = direct_scattering(p, 1)
    mu = sd.angle.content
    assert sd.gamma == (1, 1, 1) and f_matrices(mu, sd.gamma).det_F_gamma == 31635
    formula = [dynamical_period(mu, sd.gamma, velocity(mu, 1, l)) for l in range(1, 10)]
    assert formula == [simulated_period(1, l, p, 1) for l in range(1, 10)]
    assert formula == [45, 1665, 333, 1665, 31635, 2109, 31635, 31635, 3515]


def test_angle_variable_and_slides_of_the_first_example():
    case = load_cases()["ivp"]
    sd = direct_scattering(parse_path(case["path"]), 2)
    left = AngleVariable.from_windows(MU24, case["angle_windows"])
    right = AngleVariable.from_windows(MU24, case["angle_windows_slid"])
    assert sd.gamma == (2, 1, 1, 1) and sd.orbit_size == 2328
    assert angle_equal(sd.angle, left) and angle_equal(left, right)
    assert apply_slide(left, 1, 2).windows() == [tuple(w) for w in case["angle_windows_slid"]]
    assert not angle_equal(left, apply_time(left, 1, 1, 1))


@pytest.mark.parametrize("op", list(load_cases()["ivp"]["results"]))
def test_initial_value_problem(op):
    case = load_cases()["ivp"]
    p = parse_path(case["path"])
    r, l = int(op[2]), int(op[4])
    av = apply_time(direct_scattering(p, 2).angle, r, l, case["steps"])
    via_kkr = inverse_scattering(av, "kkr")
    via_theta = inverse_scattering(av, "theta")
    assert format_path(via_kkr) == format_path(via_theta) == case["results"][op]
    assert evolve_power(r, l, p, 2, case["steps"]) == via_kkr


def test_reduced_angle_variables_give_the_tabled_paths():
    left = AngleVariable.from_windows(MU24, load_cases()["ivp"]["angle_windows"])
    assert format_path(inverse_scattering(AngleVariable(MU24, (1, 0, 0, 0), left.lambdas))) == \
        "112211132211321133113221"
    assert format_path(inverse_scattering(AngleVariable(MU24, (0, 2, 0, 0), left.lambdas))) == \
        "111222132111332113311122"


@lru_cache(maxsize=None)
def scatter(p):
    return direct_scattering(p, 2)


@pytest.mark.parametrize("op", [(1, 1), (1, 2), (2, 1), (1, 3)])
def test_linearization_on_the_small_level_set(op):
    r, l = op
    for p in classify_level_sets(2, 8)[0][MU8]:
        before, after = scatter(p), scatter(evolve(r, l, p, 2)[0])
        assert angle_equal(after.angle, apply_time(before.angle, r, l, 1))
        assert after.base == before.base
        reducer = LatticeReducer(f_gamma(MU8, before.gamma))
        shifted = [x + y for x, y in zip(before.torus_coordinate, velocity(MU8, r, l))]
        assert after.torus_coordinate == reducer.reduce(shifted)


def small_angles():
    return st.tuples(st.lists(st.integers(-8, 8), min_size=4, max_size=4),
                     st.integers(0, 4), st.integers(0, 6), st.integers(0, 6))


@given(small_angles(), st.sampled_from([(1, 1), (1, 2), (1, None), (2, 1), (2, 3)]),
       st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2)]), st.integers(-3, 3), st.integers(-3, 3))
def test_slides_commute_with_time(angle, op, block, t, power):
    omega, a, b, c = angle
    lam = ((0, a), (0, min(b, c), max(b, c)), (0,), (0,))
    av = AngleVariable(MU24, tuple(omega), lam)
    r, l = op
    one = apply_time(apply_slide(av, *block, power), r, l, t)
    two = apply_slide(apply_time(av, r, l, t), *block, power)
    assert one == two
    assert order_of_symmetry(one) == order_of_symmetry(av)


@pytest.mark.parametrize("name", ["p_III", "p_IV"])
def test_general_case_orbit_sizes(name):
    case = load_cases()["general-case"][name]
    p = parse_path(case["path"])
    mu = soliton_content(p, case["n"])
    gens = admissible_generators(mu)
    assert not set(gens) & {tuple(x) for x in case["inadmissible"]}
    orbit = orbit_closure(p, case["n"], gens)
    sd = direct_scattering(p, case["n"], gens)
    assert general_case_lattice(mu, sd.gamma).orbit_size == len(orbit) == case["orbit_size"]
