from fractions import Fraction

import pytest

from periodic_sca.angle import direct_scattering, split
from periodic_sca.automaton import classify_level_sets, parse_path
from periodic_sca.bethe import (
    a_matrix,
    eigenvalue_phase,
    frac_part,
    n_prime,
    string_centers,
    string_velocity,
)
from periodic_sca.content import SolitonContent
from periodic_sca.linalg import det_bareiss, is_positive_definite
from periodic_sca.rigged import enumerate_riggings
from periodic_sca.verify import load_cases

MU24 = SolitonContent.from_partitions([(3, 3, 2, 2, 2), (4, 1)], 24)
MU8 = SolitonContent.from_partitions([(2, 1, 1), (1,)], 8)
OPS24 = [(r, l) for r in (1, 2) for l in range(1, MU24.largest_part(r) + 1)]


def test_string_matrix_is_positive_definite():
    assert is_positive_definite(a_matrix(MU24)) and det_bareiss(a_matrix(MU24)) > 0


def test_n_prime_two_ways():
    for key, value in load_cases()["bethe"]["n_prime"].items():
        r, l = (int(x) for x in key.split(","))
        assert n_prime(MU24, r, l) == (value, value)


def test_phases_are_half_integral_multiples():
    u = string_centers(direct_scattering(parse_path(load_cases()["ivp"]["path"]), 2).angle)
    for r, l in OPS24:
        scaled = eigenvalue_phase(MU24, r, l, u) * n_prime(MU24, r, l)[0] * 2
        assert scaled.denominator == 1


def test_centers_separate_the_rigged_configurations():
    centers = [string_centers(split(rc)).centers for rc in enumerate_riggings(MU8)]
    assert len(set(centers)) == len(centers) == 40


def test_number_of_bethe_roots_equals_the_count():
    roots = {string_centers(direct_scattering(p, 2).angle).centers
             for p in classify_level_sets(2, 8)[0][MU8]}
    assert len(roots) == 144


@pytest.mark.parametrize("first,second", [((1, 1), (2, 1)), ((1, 3), (2, 4)), ((1, 2), (1, 2))])
def test_phase_is_additive(first, second):
    u = string_centers(direct_scattering(parse_path(load_cases()["ivp"]["path"]), 2).angle)
    h = [x + y for x, y in zip(string_velocity(MU24, *first), string_velocity(MU24, *second))]
    combined = frac_part(sum(hx * (ux + Fraction(1, 2)) for hx, ux in zip(h, u.raw)))
    assert combined == frac_part(eigenvalue_phase(MU24, *first, u) + eigenvalue_phase(MU24, *second, u))
