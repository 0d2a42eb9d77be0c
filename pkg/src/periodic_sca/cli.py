"""Command-line front end: ``periodic-sca <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import kernels
from .angle import (
    decompose_level_set,
    direct_scattering,
    f_matrices,
    omega_count,
    period_table,
    split,
)
from .automaton import (
    INF,
    energy_spectrum,
    evolve_trajectory,
    format_path,
    is_highest,
    parse_path,
    simulated_period,
    soliton_content,
)
from .bethe import eigenvalue_phase, n_prime, string_centers
from .content import SolitonContent
from .errors import SCAError
from .rigged import RiggedConfiguration, count_riggings, kkr_backward, kkr_forward
from .tropical import ThetaData, time_average
from .verify import CASES, parse_op, run_case, run_sweep, summary


def parse_content(text: str, L: int) -> SolitonContent:
    """``"33222/41"``: one partition per color, parts as digits or comma lists."""
    parts = []
    for piece in text.split("/"):
        piece = piece.strip()
        if "," in piece:
            parts.append(tuple(int(x) for x in piece.split(",") if x))
        else:
            parts.append(tuple(int(ch) for ch in piece))
    return SolitonContent.from_partitions(parts, L)


def _path_arg(args) -> tuple[int, ...]:
    return parse_path(args.path)


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, default=_json_default))


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def cmd_evolve(args) -> int:
    p = _path_arg(args)
    r, l = parse_op(args.op)
    rows = evolve_trajectory(r, l, p, args.n, args.steps if args.steps is not None else len(p))
    for t, q in enumerate(rows):
        print(f"t={t}: {format_path(q)}")
    return 0


def cmd_kkr(args) -> int:
    rc = kkr_forward(_path_arg(args), args.n, tie_break=args.tie_break)
    print(rc.to_json())
    return 0


def cmd_kkr_inv(args) -> int:
    text = sys.stdin.read() if args.json == "-" else args.json
    rc = RiggedConfiguration.from_json(text)
    print(format_path(kkr_backward(rc, tie_break=args.tie_break)))
    return 0


def analyze(p: tuple[int, ...], n: int) -> dict:
    """Full report on an evolvable path."""
    spectrum = energy_spectrum(p, n)
    mu = soliton_content(p, n)
    report = {
        "path": format_path(p),
        "n": n,
        "L": len(p),
        "content": [list(part) for part in mu.partitions()],
        "energies": {f"{a},{l}": e for (a, l), e in sorted(spectrum.values.items())},
        "vacancy": {f"{a},{i}": v for (a, i), v in mu.vacancy_numbers().items()},
        "omega": omega_count(mu) if mu.block_keys() else 1,
    }
    if mu.is_empty():
        report.update(gamma=[], F=[], F_gamma=[], det_F=1, det_F_gamma=1, periods={},
                      angle=None, torus_coordinate=[])
        return report
    sd = direct_scattering(p, n)
    fm = f_matrices(mu, sd.gamma)
    report.update(
        gamma=list(sd.gamma),
        F=fm.F,
        F_gamma=fm.F_gamma,
        det_F=fm.det_F,
        det_F_gamma=fm.det_F_gamma,
        periods={f"{r},{l}": v for (r, l), v in period_table(mu, sd.gamma).items()},
        angle={"omega": list(sd.angle.omega), "lambdas": [list(w) for w in sd.angle.lambdas]},
        base_path=format_path(sd.base),
        torus_coordinate=list(sd.torus_coordinate),
    )
    return report


def cmd_analyze(args) -> int:
    _dump(analyze(_path_arg(args), args.n))
    return 0


def cmd_period(args) -> int:
    p = _path_arg(args)
    r, l = parse_op(args.op)
    mu = soliton_content(p, args.n)
    level = mu.largest_part(r) if l == INF else l
    sim = simulated_period(r, level, p, args.n)
    sd = direct_scattering(p, args.n)
    formula = period_table(mu, sd.gamma).get((r, min(level, mu.largest_part(r))))
    _dump({"op": args.op, "formula": formula, "simulation": sim, "agree": formula == sim})
    return 0 if formula == sim else 1


def cmd_count(args) -> int:
    mu = parse_content(args.content, args.L)
    _dump({"content": mu.describe(), "omega": omega_count(mu),
           "rigged_configurations": count_riggings(mu) if mu.is_configuration() else 0})
    return 0


def cmd_decompose(args) -> int:
    mu = parse_content(args.content, args.L)
    deco = decompose_level_set(mu)
    _dump({"content": mu.describe(), "omega": deco.omega, "total": deco.total,
           "sectors": [{"gamma": list(s.gamma), "torus_size": s.torus_size, "orbits": s.orbit_count}
                       for s in deco.sectors]})
    return 0 if deco.total == deco.omega else 1


def cmd_theta_path(args) -> int:
    p = _path_arg(args)
    if not is_highest(p, args.n):
        raise SystemExit("theta-path expects a highest path")
    rc = kkr_forward(p, args.n)
    data = ThetaData(rc.content())
    r_vec = rc.rigging_vector()
    if args.shift:
        r, l, t = (int(x) for x in args.shift.split(","))
        h = data.h(r, l)
        r_vec = [x + t * y for x, y in zip(r_vec, h)]
    print(format_path(data.path(r_vec)))
    return 0


def cmd_averages(args) -> int:
    mu = soliton_content(_path_arg(args), args.n)
    data = ThetaData(mu)
    levels = list(range(1, mu.largest_part(1) + 1)) + [None]
    rows = {("inf" if l is None else str(l)): {str(a): str(time_average(data, l, a))
                                               for a in range(2, args.n + 2)} for l in levels}
    _dump(rows)
    return 0


def cmd_bethe(args) -> int:
    p = _path_arg(args)
    rc = kkr_forward(p, args.n) if args.highest else None
    av = split(rc) if rc is not None else direct_scattering(p, args.n).angle
    mu = av.content
    u = string_centers(av)
    out = {}
    for r in range(1, mu.n + 1):
        for l in range(1, mu.largest_part(r) + 1):
            via_a, via_f = n_prime(mu, r, l)
            out[f"{r},{l}"] = {"n_prime": via_a, "n_prime_via_F": via_f,
                               "phase": str(eigenvalue_phase(mu, r, l, u))}
    _dump({"centers": [[str(x) for x in c] for c in u.centers], "phases": out})
    return 0


def cmd_verify(args) -> int:
    checks = []
    if args.case:
        names = list(CASES) if args.case == "all" else [args.case]
        for name in names:
            checks.extend(run_case(name))
    if args.n is not None or args.L is not None:
        if args.n is None or args.L is None:
            raise SystemExit("verify needs both --n and --L for a sweep")
        checks.extend(run_sweep(args.n, args.L, args.seed))
    if not checks:
        raise SystemExit("nothing to verify; pass --case or --n/--L")
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f"  [{c.detail}]" if c.detail and not c.passed else ""))
    report = summary(checks)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)
    print(f"{report['passed']} passed, {report['failed']} failed")
    return 0 if report["failed"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="periodic-sca", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s (kernels: {kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_path(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True, help="rank; letters are 1..n+1")
        p.add_argument("--path", required=True, help="path word, e.g. 321113211222111223331111")
        p.set_defaults(func=func)
        return p

    p = with_path("evolve", cmd_evolve, "print T^t(p) for t = 0..steps")
    p.add_argument("--op", default="T[1,1]", help='evolution such as "T[1,3]" or "T[2,inf]"')
    p.add_argument("--steps", type=int, help="number of steps (default: L)")

    p = with_path("kkr", cmd_kkr, "rigged configuration of a highest path as JSON")
    p.add_argument("--tie-break", choices=["first", "last"], default="last")

    p = sub.add_parser("kkr-inv", help="highest path of a rigged configuration given as JSON")
    p.add_argument("--json", required=True, help="JSON text, or - for stdin")
    p.add_argument("--tie-break", choices=["first", "last"], default="last")
    p.set_defaults(func=cmd_kkr_inv)

    with_path("analyze", cmd_analyze, "JSON report: content, energies, F, gamma, periods, angle")

    p = with_path("period", cmd_period, "dynamical period by formula and by simulation")
    p.add_argument("--op", default="T[1,1]")

    for name, func, help_text in (("count", cmd_count, "Bethe count Omega of a content"),
                                  ("decompose", cmd_decompose, "torus decomposition of a level set")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--content", required=True, help='partitions per color, e.g. "33222/41"')
        p.add_argument("--L", type=int, required=True)
        p.set_defaults(func=func)

    p = with_path("theta-path", cmd_theta_path, "reconstruct a highest path from its riggings by theta")
    p.add_argument("--shift", help="r,l,t: add t times the velocity of T[r,l] to the riggings")

    with_path("averages", cmd_averages, "time averages of the T[1,l] carrier letters")

    p = with_path("bethe", cmd_bethe, "string centers, N' and eigenvalue phases")
    p.add_argument("--highest", action="store_true", help="use the path's own riggings instead of scattering")

    p = sub.add_parser("verify", help="run golden cases and bounded sweeps")
    p.add_argument("--case", help=f"one of {', '.join(CASES)}, or all")
    p.add_argument("--n", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--seed", type=int, default=0, help="orders sampled checks; never changes results")
    p.add_argument("--json", help="write a machine-readable summary here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SCAError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
