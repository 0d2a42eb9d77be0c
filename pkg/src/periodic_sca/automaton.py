"""Paths, carrier transport and the commuting time evolutions T^(r)_l."""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from . import kernels
from .content import SolitonContent
from .errors import (
    BudgetExceeded,
    NegativeMultiplicity,
    NoCarrier,
    NonUniqueEvolution,
    NotInB1,
)
from .tableau import Tableau, highest_tableau, r_matrix

Path = tuple[int, ...]
INF = "inf"
DEFAULT_LEVEL_SET_BUDGET = 2_000_000
DEFAULT_ORBIT_BUDGET = 500_000


def parse_path(text: str) -> Path:
    text = text.strip()
    if not text:
        raise ValueError("empty path word")
    for col, ch in enumerate(text, start=1):
        if ch not in "123456789":
            raise ValueError(f"bad letter {ch!r} at column {col} of path word {text!r}")
    return tuple(int(ch) for ch in text)


def format_path(p: Sequence[int]) -> str:
    return "".join(str(x) for x in p)


def check_path(p: Sequence[int], n: int) -> None:
    if not p:
        raise ValueError("empty path")
    bad = [x for x in p if not 1 <= x <= n + 1]
    if bad:
        raise ValueError(f"letters {sorted(set(bad))} outside 1..{n + 1}")


@lru_cache(maxsize=256)
def transport_tables(r: int, l: int, n: int) -> kernels.TransportTables:
    return kernels.TransportTables(r_matrix(r, l, n))


def cyclic_shift(p: Sequence[int]) -> Path:
    return (p[-1],) + tuple(p[:-1])


def transport(v: Tableau, p: Sequence[int], n: int) -> tuple[Path, Tableau, list[int]]:
    """Carry ``v`` through ``p`` left to right; return ``(p', v', local energies)``."""
    r, l = len(v.rows), len(v.rows[0])
    tabs = transport_tables(r, l, n)
    out, v_final, en = tabs.transport(array("i", p), tabs.rmat.index[v])
    return tuple(out), tabs.rmat.tableaux[v_final], list(en)


def carrier_trace(v: Tableau, p: Sequence[int], n: int) -> list[Tableau]:
    """Carriers ``v_0 = v, v_1, ..., v_L`` seen between the sites of ``p``."""
    rmat = r_matrix(len(v.rows), len(v.rows[0]), n)
    out = [v]
    for x in p:
        v = rmat.apply(v, x)[1]
        out.append(v)
    return out


@dataclass(frozen=True)
class Evolution:
    path: Path
    energies: tuple[int, ...]
    carriers: tuple[Tableau, ...]

    @property
    def energy(self) -> int:
        return sum(self.energies)


def resolve_level(r: int, l, p: Sequence[int], n: int) -> int:
    """Numeric level; ``INF`` becomes the largest part of mu^(r) (at least 1)."""
    if l == INF or l is None:
        return max(1, soliton_content(p, n).largest_part(r))
    l = int(l)
    if l < 1:
        raise ValueError("level must be positive")
    return l


def evolve_detail(r: int, l, p: Sequence[int], n: int) -> Evolution:
    """Evolution by every fixed-point carrier, with uniqueness checked."""
    check_path(p, n)
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}")
    l = resolve_level(r, l, p, n)
    tabs = transport_tables(r, l, n)
    arr = array("i", p)
    fixed = tabs.fixed_carriers(arr)
    if not fixed:
        raise NoCarrier(f"no carrier in B^({r},{l}) is a fixed point for {format_path(p)}")
    results = []
    for v in fixed:
        out, _, en = tabs.transport(arr, v)
        results.append((tuple(out), tuple(en)))
    first = results[0]
    for v, res in zip(fixed[1:], results[1:]):
        if res != first:
            carriers = (tabs.rmat.tableaux[fixed[0]], tabs.rmat.tableaux[v])
            what = "paths" if res[0] != first[0] else "local energies only"
            raise NonUniqueEvolution(
                f"T^({r})_{l} of {format_path(p)}: carriers {carriers[0]} and {carriers[1]} "
                f"give different {what}: {format_path(first[0])} vs {format_path(res[0])}",
                carriers,
            )
    return Evolution(first[0], first[1], tuple(tabs.rmat.tableaux[v] for v in fixed))


def evolve(r: int, l, p: Sequence[int], n: int) -> tuple[Path, int]:
    """``(T^(r)_l(p), E^(r)_l(p))``."""
    ev = evolve_detail(r, l, p, n)
    return ev.path, ev.energy


def _raise_status(status, r, l, p, n, tabs):
    code, step, c1, c2 = status
    if code == kernels.backend.STATUS_NO_CARRIER:
        raise NoCarrier(f"no fixed-point carrier for T^({r})_{l} at step {step} from {format_path(p)}")
    if code == kernels.backend.STATUS_NON_UNIQUE:
        carriers = (tabs.rmat.tableaux[c1], tabs.rmat.tableaux[c2])
        raise NonUniqueEvolution(
            f"T^({r})_{l} is not unique at step {step} from {format_path(p)} "
            f"(carriers {carriers[0]} and {carriers[1]})", carriers)


def evolve_power(r: int, l, p: Sequence[int], n: int, t: int) -> Path:
    """``(T^(r)_l)^t (p)`` for ``t >= 0``, iterated inside the kernel."""
    check_path(p, n)
    if t < 0:
        raise ValueError("negative powers need a period; see angle.evolve_word")
    l = resolve_level(r, l, p, n)
    tabs = transport_tables(r, l, n)
    arr = array("i", p)
    status, _ = tabs.evolve_steps(arr, t)
    _raise_status(status, r, l, p, n, tabs)
    return tuple(arr)


def evolve_trajectory(r: int, l, p: Sequence[int], n: int, t: int) -> list[Path]:
    """``[p, T p, ..., T^t p]``."""
    l = resolve_level(r, l, p, n)
    out = [tuple(p)]
    for _ in range(t):
        out.append(evolve(r, l, out[-1], n)[0])
    return out


def simulated_period(r: int, l, p: Sequence[int], n: int, max_steps: int = 10_000_000) -> int:
    """Smallest ``N >= 1`` with ``T^N p = p`` found by direct simulation."""
    l = resolve_level(r, l, p, n)
    tabs = transport_tables(r, l, n)
    arr = array("i", p)
    status, _ = tabs.evolve_steps(arr, max_steps, stop_on_return=True)
    _raise_status(status, r, l, p, n, tabs)
    if status[0] != kernels.backend.STATUS_RETURNED:
        raise BudgetExceeded(f"no return within {max_steps} steps")
    return status[1]


def carrier_visits(r: int, l, p: Sequence[int], n: int, steps: int) -> tuple[Path, dict[Tableau, int]]:
    """Run ``steps`` evolutions; count how often each carrier was the fixed point."""
    l = resolve_level(r, l, p, n)
    tabs = transport_tables(r, l, n)
    arr = array("i", p)
    status, visits = tabs.evolve_steps(arr, steps)
    _raise_status(status, r, l, p, n, tabs)
    counts = {tabs.rmat.tableaux[v]: c for v, c in enumerate(visits) if c}
    return tuple(arr), counts


def hat_energy(r: int, l: int, p: Sequence[int], n: int) -> int:
    """Energy of one pass of the highest carrier (row j filled with j)."""
    _, _, en = transport(highest_tableau(r, l), p, n)
    return sum(en)


@dataclass(frozen=True)
class EnergySpectrum:
    values: dict = field(hash=False)      # (a, l) -> E^(a)_l, l = 1..saturation+1
    saturation: dict = field(hash=False)  # a -> smallest l after which E^(a) is constant

    def get(self, a: int, l: int) -> int:
        if l <= 0:
            return 0
        top = self.saturation[a] + 1
        return self.values[(a, min(l, top))]


def _energy_at(a: int, l: int, p, n: int, mode: str) -> int:
    if mode == "carrier-fixed-point":
        return evolve_detail(a, l, p, n).energy
    if mode == "highest-carrier":
        return hat_energy(a, l, p, n)
    raise ValueError(f"unknown mode {mode!r}")


def energy_spectrum(p: Sequence[int], n: int, mode: str = "carrier-fixed-point",
                    max_level: int | None = None) -> EnergySpectrum:
    """``E^(a)_l`` for every color until two consecutive levels agree.

    A nondecreasing concave sequence is constant once it stops growing, so
    the level where ``E_l = E_(l+1)`` marks saturation.
    """
    check_path(p, n)
    top = max_level if max_level is not None else len(p) + 1
    values: dict = {}
    saturation: dict = {}
    for a in range(1, n + 1):
        prev = 0
        for l in range(1, top + 1):
            e = _energy_at(a, l, p, n, mode)
            values[(a, l)] = e
            if e == prev:
                saturation[a] = l - 1
                break
            prev = e
        else:
            raise BudgetExceeded(f"energies of color {a} did not saturate by level {top}")
    return EnergySpectrum(values, saturation)


def content_from_spectrum(spec: EnergySpectrum, L: int, n: int) -> SolitonContent:
    partitions = []
    for a in range(1, n + 1):
        parts: list[int] = []
        for l in range(1, spec.saturation[a] + 1):
            m = -spec.get(a, l - 1) + 2 * spec.get(a, l) - spec.get(a, l + 1)
            if m < 0:
                raise NegativeMultiplicity(f"second difference of E^({a}) at l={l} is {m}")
            parts.extend([l] * m)
        partitions.append(parts)
    return SolitonContent.from_partitions(partitions, L)


def soliton_content(p: Sequence[int], n: int, mode: str = "carrier-fixed-point") -> SolitonContent:
    return content_from_spectrum(energy_spectrum(p, n, mode), len(p), n)


def energies_of_content(mu: SolitonContent, a: int, l: int) -> int:
    """Predicted ``E^(a)_l = sum_i min(l, l_i) m_i`` for paths of content ``mu``."""
    return sum(min(l, li) * m for li, m in mu.blocks[a - 1])


def _cyclic_matching(p: Sequence[int], a: int) -> list[tuple[int, int]]:
    """Pairs (position of a, position of 1) connected by cyclic arcs."""
    size = len(p)
    stack: list[int] = []
    pairs: list[tuple[int, int]] = []
    matched_ones: set[int] = set()
    for sweep in range(2):
        for k in range(size):
            x = p[k]
            if x == a and sweep == 0:
                stack.append(k)
            elif x == 1 and stack and k not in matched_ones:
                pairs.append((stack.pop(), k))
                matched_ones.add(k)
    if stack:
        raise NotInB1(f"letter {a} outnumbers letter 1")
    return pairs


def k_move(a: int, p: Sequence[int]) -> Path:
    """Swap ``a`` and ``1`` within every cyclically connected pair ``a ... 1``."""
    if a < 2:
        raise ValueError("K_a is defined for a >= 2")
    ones = sum(1 for x in p if x == 1)
    if any(sum(1 for x in p if x == b) > ones for b in set(p)):
        raise NotInB1(f"{format_path(p)} is not in B_1")
    out = list(p)
    for i, j in _cyclic_matching(p, a):
        out[i], out[j] = 1, a
    return tuple(out)


def t1_infinity(p: Sequence[int], n: int) -> Path:
    """``K_2 K_3 ... K_(n+1)`` applied to ``p`` (``K_(n+1)`` acts first)."""
    out = tuple(p)
    for a in range(n + 1, 1, -1):
        out = k_move(a, out)
    return out


@dataclass(frozen=True)
class PathStats:
    is_highest: bool
    weights: tuple[int, ...]
    in_P: bool


def weights(p: Sequence[int], n: int) -> tuple[int, ...]:
    counts = [0] * (n + 1)
    for x in p:
        counts[x - 1] += 1
    return tuple(counts)


def is_highest(p: Sequence[int], n: int) -> bool:
    counts = [0] * (n + 2)
    for x in p:
        counts[x] += 1
        if x > 1 and counts[x] > counts[x - 1]:
            return False
    return True


def path_stats(p: Sequence[int], n: int) -> PathStats:
    w = weights(p, n)
    in_p = all(w[i] >= w[i + 1] for i in range(n))
    return PathStats(is_highest(p, n), w, in_p)


def null_convex_blocks(mu: SolitonContent) -> list[tuple[int, int]]:
    """Blocks with zero vacancy covered twice over by the neighbouring diagrams."""
    vac = mu.vacancy_numbers()
    out = []
    for a in range(1, mu.n + 1):
        union = mu.partition(a - 1) + mu.partition(a + 1)
        rows_through = 0
        for i, (l, m) in enumerate(mu.blocks[a - 1], start=1):
            rows_through += m
            if vac[(a, i)] != 0:
                continue
            if sum(1 for x in union if x >= l) >= 2 * rows_through:
                out.append((a, i))
    return out


def admissibility(mu: SolitonContent, r: int, l: int) -> bool:
    """False when some null convex color-r block has ``l_i > l > l_(i+1)``."""
    color = mu.blocks[r - 1]
    for a, i in null_convex_blocks(mu):
        if a != r:
            continue
        upper = color[i - 1][0]
        lower = color[i][0] if i < len(color) else 0
        if upper > l > lower:
            return False
    return True


def inadmissible_evolutions(mu: SolitonContent) -> list[tuple[int, int]]:
    out = []
    for r in range(1, mu.n + 1):
        for l in range(1, mu.largest_part(r) + 1):
            if not admissibility(mu, r, l):
                out.append((r, l))
    return out


def default_generators(mu: SolitonContent) -> list[tuple[int, int]]:
    """T^(1)_1 and T^(a)_eta with eta = l_(i+1) + 1 (1 for the last block)."""
    gens = [(1, 1)]
    for a in range(1, mu.n + 1):
        color = mu.blocks[a - 1]
        for i in range(len(color)):
            eta = color[i + 1][0] + 1 if i + 1 < len(color) else 1
            if (a, eta) not in gens:
                gens.append((a, eta))
    return gens


def admissible_generators(mu: SolitonContent) -> list[tuple[int, int]]:
    """Every admissible T^(a)_l with l up to the largest part of mu^(a)."""
    return [(a, l) for a in range(1, mu.n + 1) for l in range(1, max(1, mu.largest_part(a)) + 1)
            if admissibility(mu, a, l)]


def orbit_closure(p: Sequence[int], n: int, generators: Sequence[tuple[int, int]],
                  budget: int = DEFAULT_ORBIT_BUDGET) -> dict[Path, tuple[int, ...]]:
    """Breadth-first closure of ``p`` under forward generators.

    Maps each reached path to the exponent vector (one entry per generator)
    of a word carrying ``p`` to it.
    """
    start = tuple(p)
    seen = {start: (0,) * len(generators)}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        word = seen[q]
        for k, (r, l) in enumerate(generators):
            nxt = evolve(r, l, q, n)[0]
            if nxt not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(f"orbit exceeds {budget} paths")
                w = list(word)
                w[k] += 1
                seen[nxt] = tuple(w)
                queue.append(nxt)
    return seen


def words_in_P(n: int, L: int, budget: int = DEFAULT_LEVEL_SET_BUDGET) -> Iterable[Path]:
    """Every word with #1 >= #2 >= ... >= #(n+1)."""
    if (n + 1) ** L > budget:
        raise BudgetExceeded(f"(n+1)^L = {(n + 1) ** L} exceeds {budget}")
    for p in product(range(1, n + 2), repeat=L):
        w = weights(p, n)
        if all(w[i] >= w[i + 1] for i in range(n)):
            yield p


def classify_level_sets(n: int, L: int, budget: int = DEFAULT_LEVEL_SET_BUDGET
                        ) -> tuple[dict[SolitonContent, list[Path]], list[Path]]:
    """Group every evolvable word of P by soliton content.

    Returns the grouping and the list of words of P that fail evolvability
    at some level up to saturation.
    """
    groups: dict[SolitonContent, list[Path]] = {}
    rejected: list[Path] = []
    for p in words_in_P(n, L, budget):
        try:
            mu = soliton_content(p, n)
        except (NoCarrier, NonUniqueEvolution, NegativeMultiplicity):
            rejected.append(p)
            continue
        groups.setdefault(mu, []).append(p)
    return groups, rejected


@lru_cache(maxsize=32)
def _cached_classification(n: int, L: int):
    return classify_level_sets(n, L)


def enumerate_level_set(mu: SolitonContent, budget: int = DEFAULT_LEVEL_SET_BUDGET) -> list[Path]:
    """``P(mu)`` by filtering all words of P."""
    if (mu.n + 1) ** mu.L > budget:
        raise BudgetExceeded(f"(n+1)^L = {(mu.n + 1) ** mu.L} exceeds {budget}")
    groups, _ = _cached_classification(mu.n, mu.L)
    return list(groups.get(mu, []))


def apply_word(p: Sequence[int], n: int, generators: Sequence[tuple[int, int]],
               exponents: Iterable[int]) -> Path:
    """Apply ``prod_k T_k^(e_k)`` with nonnegative exponents."""
    out = tuple(p)
    for (r, l), e in zip(generators, exponents):
        if e:
            out = evolve_power(r, l, out, n, e)
    return out
