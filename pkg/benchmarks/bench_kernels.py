"""Time the transport kernels: compiled extension against the pure-Python twin.

Usage: python benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import timeit
from array import array

from periodic_sca.automaton import parse_path
from periodic_sca.kernels import TransportTables, load_backend
from periodic_sca.tableau import r_matrix

WORKLOADS = [
    # (label, r, l, n, path, steps)
    ("T[1,3] x 194 on L=24", 1, 3, 2, "321113211222111223331111", 194),
    ("T[2,4] x 2328 on L=24", 2, 4, 2, "321113211222111223331111", 2328),
    ("T[1,9] x 3515 on L=45", 1, 9, 1, "111222221111222222221111111111111112222111211", 3515),
]


def run(impl, r, l, n, word, steps):
    tables = TransportTables(r_matrix(r, l, n), impl)
    path = array("i", parse_path(word))
    status, _ = tables.evolve_steps(path, steps)
    return tuple(path), status


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = {}
    for name in ("python", "cython"):
        try:
            backends[name] = load_backend(name)
        except ImportError:
            print(f"{name} backend unavailable; skipping")
    print(f"{'workload':<26}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, r, l, n, word, steps in WORKLOADS:
        results = {name: run(impl, r, l, n, word, steps) for name, impl in backends.items()}
        if len(set(results.values())) != 1:
            raise SystemExit(f"backends disagree on {label}")
        times = {name: min(timeit.repeat(lambda impl=impl: run(impl, r, l, n, word, steps),
                                          number=1, repeat=args.repeat))
                 for name, impl in backends.items()}
        speedup = times["python"] / times["cython"] if len(times) == 2 else float("nan")
        print(f"{label:<26}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times.values()) + f"{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
