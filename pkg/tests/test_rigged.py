from functools import lru_cache
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_sca.automaton import format_path, is_highest, parse_path
from periodic_sca.content import SolitonContent, configurations
from periodic_sca.rigged import (
    RiggedConfiguration,
    concatenate,
    count_riggings,
    enumerate_riggings,
    kkr_backward,
    kkr_forward,
)
from periodic_sca.verify import load_cases


@lru_cache(maxsize=None)
def all_highest(n, L):
    return [p for p in product(range(1, n + 2), repeat=L) if is_highest(p, n)]


def every_branch(run):
    """Results of ``run(chooser)`` over every sequence of tie choices."""
    results = set()
    pending = [()]
    while pending:
        script = pending.pop()
        taken = []

        def chooser(tied, script=script, taken=taken):
            k = len(taken)
            pick = script[k] if k < len(script) else 0
            if k >= len(script):
                for alt in range(1, len(tied)):
                    pending.append(tuple(taken) + (alt,))
            taken.append(pick)
            return tied[pick]

        results.add(run(chooser))
    return results


def test_golden_highest_paths():
    case = load_cases()["kkr"]
    mu = SolitonContent.from_partitions([tuple(x) for x in case["content"]], case["L"])
    for item in case["highest_paths"]:
        rc = kkr_forward(parse_path(item["path"]), 2)
        want = RiggedConfiguration.from_content(mu, item["riggings"])
        assert rc == want
        assert format_path(kkr_backward(rc)) == item["path"]


def test_inverse_example():
    inv = load_cases()["kkr"]["inverse"]
    mu = SolitonContent.from_partitions([tuple(x) for x in inv["content"]], inv["L"])
    assert format_path(kkr_backward(RiggedConfiguration.from_content(mu, inv["riggings"]))) == inv["path"]


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("L", range(1, 9))
def test_round_trip_on_every_highest_path(n, L):
    for p in all_highest(n, L):
        rc = kkr_forward(p, n)
        rc.validate()
        assert kkr_backward(rc) == p


def test_round_trip_on_every_rigged_configuration_of_the_small_system():
    mu = SolitonContent.from_partitions([(2, 1, 1), (1,)], 8)
    rcs = enumerate_riggings(mu)
    assert len(rcs) == count_riggings(mu) == 40
    paths = {kkr_backward(rc) for rc in rcs}
    assert len(paths) == 40
    assert all(kkr_forward(kkr_backward(rc), 2) == rc for rc in rcs)


@pytest.mark.parametrize("L", range(1, 7))
def test_tie_choices_do_not_matter(L):
    for n in (1, 2, 3):
        for p in all_highest(n, L):
            forward = every_branch(lambda ch: kkr_forward(p, n, tie_break=ch))
            assert len(forward) == 1
            (rc,) = forward
            assert every_branch(lambda ch: kkr_backward(rc, tie_break=ch)) == {p}


@pytest.mark.parametrize("n", [1, 2])
def test_weight_law(n):
    for L in range(1, 8):
        for mu in configurations(n, L):
            for rc in enumerate_riggings(mu):
                p = kkr_backward(rc)
                counts = [p.count(a) for a in range(1, n + 2)]
                assert tuple(counts) == mu.weights()


highest_pair = st.tuples(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))


@given(highest_pair)
def test_concatenation_shifts_riggings_by_vacancies(args):
    L1, L2, i, j = args
    left, right = all_highest(2, L1), all_highest(2, L2)
    p, q = left[i % len(left)], right[j % len(right)]
    assert kkr_forward(p + q, 2) == concatenate(kkr_forward(p, 2), kkr_forward(q, 2))


def test_json_round_trip():
    rc = kkr_forward(parse_path("111221113221132113311322"), 2)
    assert RiggedConfiguration.from_json(rc.to_json()) == rc
