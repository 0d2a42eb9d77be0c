import json

import pytest

from periodic_sca.cli import main
from periodic_sca.verify import load_cases


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_evolve_prints_the_table(capsys):
    case = load_cases()["two-color-l24"]
    code, out = run(capsys, "evolve", "--n", "2", "--path", case["path"], "--op", "T[2,4]", "--steps", "9")
    assert code == 0
    assert [line.split(": ")[1] for line in out.out.splitlines()] == case["evolutions"]["T[2,4]"]


def test_cyclic_shift_for_L_steps_returns(capsys):
    code, out = run(capsys, "evolve", "--n", "2", "--path", "2113", "--op", "T[1,1]")
    assert code == 0 and out.out.splitlines()[-1] == "t=4: 2113"


def test_non_unique_evolution_exits_nonzero(capsys):
    code, out = run(capsys, "evolve", "--n", "2", "--path", "213213", "--op", "T[2,1]")
    assert code != 0 and "NonUniqueEvolution" in out.err


def test_kkr_round_trip(capsys):
    _, out = run(capsys, "kkr", "--n", "2", "--path", "11213122")
    code, back = run(capsys, "kkr-inv", "--json", out.out)
    assert code == 0 and back.out.strip() == "11213122"


def test_analyze_report(capsys):
    code, out = run(capsys, "analyze", "--n", "2", "--path", "211332111321133112221112")
    report = json.loads(out.out)
    assert code == 0 and report["det_F"] == 4656 and report["gamma"] == [2, 1, 1, 1]
    assert report["periods"]["2,4"] == 2328 and report["omega"] == 139680
    assert json.loads(json.dumps(report)) == report


def test_analyze_empty_content(capsys):
    code, out = run(capsys, "analyze", "--n", "2", "--path", "1111")
    report = json.loads(out.out)
    assert code == 0 and report["content"] == [[], []] and report["periods"] == {}


def test_count_and_decompose(capsys):
    _, out = run(capsys, "count", "--content", "33222/41", "--L", "24")
    assert json.loads(out.out)["omega"] == 139680
    code, out = run(capsys, "decompose", "--content", "33222/41", "--L", "24")
    assert code == 0 and json.loads(out.out)["total"] == 139680


def test_period_and_averages(capsys):
    code, out = run(capsys, "period", "--n", "2", "--path", "321113211222111223331111", "--op", "T[2,inf]")
    assert code == 0 and json.loads(out.out)["simulation"] == 2328
    _, out = run(capsys, "averages", "--n", "2", "--path", "321113211222111223331111")
    assert json.loads(out.out)["inf"] == {"2": "155/194", "3": "109/194"}


def test_theta_path_with_shift(capsys):
    code, out = run(capsys, "theta-path", "--n", "2", "--path", "111221113221132113311322")
    assert code == 0 and out.out.strip() == "111221113221132113311322"


def test_bethe_command(capsys):
    code, out = run(capsys, "bethe", "--n", "2", "--path", "111221113221132113311322", "--highest")
    assert code == 0 and json.loads(out.out)["phases"]["2,4"]["n_prime"] == 2328


@pytest.mark.parametrize("case", ["two-color-l24", "theta-oracle"])
def test_verify_cases(capsys, case, tmp_path):
    target = tmp_path / "report.json"
    code, out = run(capsys, "verify", "--case", case, "--json", str(target))
    assert code == 0 and "FAIL" not in out.out
    assert json.loads(target.read_text())["failed"] == 0


def test_verify_sweep_is_seed_independent(capsys):
    code_a, out_a = run(capsys, "verify", "--n", "2", "--L", "6", "--seed", "1")
    code_b, out_b = run(capsys, "verify", "--n", "2", "--L", "6", "--seed", "2")
    assert code_a == code_b == 0 and out_a.out == out_b.out
