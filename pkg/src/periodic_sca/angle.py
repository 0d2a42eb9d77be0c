"""Angle variables, slides, tori, state counting and dynamical periods."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb, gcd, prod
from typing import Sequence

from .automaton import (
    admissible_generators,
    apply_word,
    default_generators,
    format_path,
    is_highest,
    null_convex_blocks,
    orbit_closure,
    simulated_period,
    soliton_content,
)
from .content import SolitonContent, cartan
from .errors import NoHighestPathInOrbit, RoutesDisagree, ZeroVelocity
from .linalg import (
    LatticeReducer,
    binomial,
    det_bareiss,
    divisors,
    lcm_rationals,
    mobius,
    replace_column,
    solve_exact,
)
from .rigged import RiggedConfiguration, kkr_backward, kkr_forward

BlockKey = tuple[int, int]


# extended riggings ---------------------------------------------------------

def extend_window(window: Sequence[int], period: int, alpha: int) -> int:
    """Entry ``alpha`` (1-based, any integer) of the quasi-periodic extension."""
    m = len(window)
    q, s = divmod(alpha - 1, m)
    return window[s] + q * period


@dataclass(frozen=True)
class AngleVariable:
    """Representative ``(omega, lambda)`` of an angle variable.

    ``omega`` holds the first rigging of every block; ``lambdas`` holds one
    fundamental window per block, starting at 0.
    """

    content: SolitonContent
    omega: tuple[int, ...]
    lambdas: tuple[tuple[int, ...], ...]

    @classmethod
    def from_windows(cls, mu: SolitonContent, windows: Sequence[Sequence[int]]) -> "AngleVariable":
        """Split riggings ``r_1..r_m`` of each block (any integers, nondecreasing)."""
        omega = tuple(w[0] for w in windows)
        lambdas = tuple(tuple(x - w[0] for x in w) for w in windows)
        return cls(mu, omega, lambdas)

    def block_index(self) -> dict[BlockKey, int]:
        return {k: idx for idx, k in enumerate(self.content.block_keys())}

    def windows(self) -> list[tuple[int, ...]]:
        return [tuple(o + x for x in lam) for o, lam in zip(self.omega, self.lambdas)]

    def extended(self, a: int, i: int, alpha: int) -> int:
        idx = self.block_index()[(a, i)]
        p = self.content.vacancy(a, self.content.length(a, i))
        return self.omega[idx] + extend_window(self.lambdas[idx], p, alpha)

    def rigging_vector(self) -> list[int]:
        """Riggings in string order, taken from the window ``1..m`` of every block."""
        return [x for w in self.windows() for x in w]

    def is_rigged_configuration(self) -> bool:
        vac = self.content.vacancy_numbers()
        return all(0 <= x <= vac[k] for k, w in zip(self.content.block_keys(), self.windows()) for x in w)

    def to_rigged(self) -> RiggedConfiguration:
        mu = self.content
        riggings = [[() for _ in mu.blocks[a]] for a in range(mu.n)]
        for (a, i), w in zip(mu.block_keys(), self.windows()):
            riggings[a - 1][i - 1] = w
        rc = RiggedConfiguration.from_content(mu, riggings)
        rc.validate()
        return rc


def split(rc: RiggedConfiguration) -> AngleVariable:
    mu = rc.content()
    rigs = rc.block_riggings()
    return AngleVariable.from_windows(mu, [rigs[k] for k in mu.block_keys()])


def velocity(mu: SolitonContent, r: int, l) -> list[int]:
    """``h^(r)_l`` over blocks; ``l=None`` means infinity."""
    return [(mu.length(b, j) if l is None else min(l, mu.length(b, j))) if b == r else 0
            for b, j in mu.block_keys()]


def word_velocity(mu: SolitonContent, generators: Sequence[tuple[int, int]],
                  exponents: Sequence[int]) -> list[int]:
    total = [0] * len(mu.block_keys())
    for (r, l), d in zip(generators, exponents):
        total = [x + d * y for x, y in zip(total, velocity(mu, r, l))]
    return total


def apply_time(av: AngleVariable, r: int, l, t: int = 1) -> AngleVariable:
    h = velocity(av.content, r, l)
    return AngleVariable(av.content, tuple(o + t * x for o, x in zip(av.omega, h)), av.lambdas)


def shift_omega(av: AngleVariable, delta: Sequence[int]) -> AngleVariable:
    return AngleVariable(av.content, tuple(o + x for o, x in zip(av.omega, delta)), av.lambdas)


def apply_slide(av: AngleVariable, a: int, i: int, power: int = 1) -> AngleVariable:
    """``(s^(a)_i)^power``: shift the window of block ``(a,i)`` and add Cartan terms."""
    mu = av.content
    la = mu.length(a, i)
    windows = []
    for (b, j), o, lam in zip(mu.block_keys(), av.omega, av.lambdas):
        p = mu.vacancy(b, mu.length(b, j))
        step = power if (b, j) == (a, i) else 0
        add = power * cartan(a, b) * min(la, mu.length(b, j))
        windows.append([o + extend_window(lam, p, alpha + step) + add for alpha in range(1, len(lam) + 1)])
    return AngleVariable.from_windows(mu, windows)


def angle_equal(av1: AngleVariable, av2: AngleVariable) -> bool:
    """Equality modulo slides, decided through the string centers."""
    from .bethe import string_centers

    if av1.content != av2.content:
        return False
    return string_centers(av1, check_collisions=False).centers == \
        string_centers(av2, check_collisions=False).centers


# order of symmetry and counting -------------------------------------------

def window_symmetry(window: Sequence[int], p: int) -> int:
    """Largest common divisor ``gamma`` of ``(m, p)`` with period ``m/gamma`` and increment ``p/gamma``."""
    m = len(window)
    for g in sorted(divisors(gcd(m, p)), reverse=True):
        step, inc = m // g, p // g
        if all(extend_window(window, p, alpha + step) == extend_window(window, p, alpha) + inc
               for alpha in range(1, m + 1)):
            return g
    return 1


def order_of_symmetry(av: AngleVariable) -> tuple[int, ...]:
    mu = av.content
    return tuple(window_symmetry(lam, mu.vacancy(a, mu.length(a, i)))
                 for (a, i), lam in zip(mu.block_keys(), av.lambdas))


def lambda_windows(m: int, p: int) -> list[tuple[int, ...]]:
    """All fundamental windows ``0 = lambda_1 <= ... <= lambda_m <= p``."""
    return [(0,) + rest for rest in combinations_with_replacement(range(p + 1), m - 1)]


def lambda_counts(m: int, p: int) -> tuple[int, dict[int, int]]:
    """Total count and per-gamma counts by Moebius inversion."""
    total = comb(p + m - 1, m - 1)
    per = {}
    common = divisors(gcd(m, p))
    for g in common:
        per[g] = sum(mobius(beta // g) * comb((p + m) // beta - 1, m // beta - 1)
                     for beta in common if beta % g == 0)
    return total, per


def lambda_counts_by_enumeration(m: int, p: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for w in lambda_windows(m, p):
        g = window_symmetry(w, p)
        out[g] = out.get(g, 0) + 1
    return out


def f_matrix(mu: SolitonContent) -> list[list[int]]:
    """``F`` over blocks: ``delta p + C min(l, l') m'``."""
    vac = mu.vacancy_numbers()
    keys = mu.block_keys()
    return [[(vac[(a, i)] if (a, i) == (b, j) else 0)
             + cartan(a, b) * min(mu.length(a, i), mu.length(b, j)) * mu.mult(b, j)
             for b, j in keys] for a, i in keys]


def f_gamma(mu: SolitonContent, gamma: Sequence[int]) -> list[list[int]]:
    out = []
    for row in f_matrix(mu):
        new = []
        for x, g in zip(row, gamma):
            q, rem = divmod(x, g)
            if rem:
                raise ValueError(f"gamma {tuple(gamma)} does not divide column entry {x}")
            new.append(q)
        out.append(new)
    return out


@dataclass(frozen=True)
class FMatrices:
    F: list
    F_gamma: list
    det_F: int
    det_F_gamma: int


def f_matrices(mu: SolitonContent, gamma: Sequence[int] | None = None) -> FMatrices:
    if gamma is None:
        gamma = (1,) * len(mu.block_keys())
    F = f_matrix(mu)
    Fg = f_gamma(mu, gamma)
    return FMatrices(F, Fg, det_bareiss(F) if F else 1, det_bareiss(Fg) if Fg else 1)


def omega_count(mu: SolitonContent) -> int:
    """Bethe count ``det F * prod binom(p+m-1, m-1)/m`` with extended binomials."""
    total = Fraction(det_bareiss(f_matrix(mu)) if mu.block_keys() else 1)
    for a, i in mu.block_keys():
        m = mu.mult(a, i)
        total *= binomial(mu.vacancy(a, mu.length(a, i)) + m - 1, m - 1) / m
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral count {total} for {mu.describe()}")
    return int(total)


@dataclass(frozen=True)
class SymmetrySector:
    gamma: tuple[int, ...]
    torus_size: int
    orbit_count: int

    @property
    def paths(self) -> int:
        return self.torus_size * self.orbit_count


@dataclass(frozen=True)
class Decomposition:
    sectors: tuple[SymmetrySector, ...]
    omega: int

    @property
    def total(self) -> int:
        return sum(s.paths for s in self.sectors)


def decompose_level_set(mu: SolitonContent) -> Decomposition:
    """Sectors by order of symmetry: torus size ``det F_gamma`` times the orbit count."""
    keys = mu.block_keys()
    vac = mu.vacancy_numbers()
    per_block = [lambda_counts(mu.mult(*k), vac[k])[1] for k in keys]
    sectors = []
    for gamma in product(*[sorted(d) for d in per_block]):
        count = Fraction(1)
        for k, g, counts in zip(keys, gamma, per_block):
            count *= Fraction(counts[g] * g, mu.mult(*k))
        if count == 0:
            continue
        if count.denominator != 1:
            raise ArithmeticError(f"non-integral orbit count {count} for gamma {gamma}")
        size = det_bareiss(f_gamma(mu, gamma)) if keys else 1
        sectors.append(SymmetrySector(tuple(gamma), size, int(count)))
    return Decomposition(tuple(sectors), omega_count(mu))


def dynamical_period(mu: SolitonContent, gamma: Sequence[int], vel: Sequence[int]) -> int:
    """Smallest ``N`` with ``N vel`` in the lattice ``F_gamma Z^g``."""
    if not any(vel):
        raise ZeroVelocity("velocity vector is zero")
    Fg = f_gamma(mu, gamma)
    det = det_bareiss(Fg)
    ratios = []
    for j in range(len(vel)):
        dj = det_bareiss(replace_column(Fg, j, vel))
        if dj != 0:
            ratios.append(Fraction(det, dj))
    return lcm_rationals(ratios)


def period_table(mu: SolitonContent, gamma: Sequence[int]) -> dict[tuple[int, int], int]:
    """``N^(r)_l`` for every color and every level up to saturation."""
    return {(r, l): dynamical_period(mu, gamma, velocity(mu, r, l))
            for r in range(1, mu.n + 1) for l in range(1, mu.largest_part(r) + 1)}


@dataclass(frozen=True)
class GeneralLattice:
    xi: dict
    unit_cell_volume: int
    orbit_size: Fraction
    null_convex: tuple


def general_case_lattice(mu: SolitonContent, gamma: Sequence[int]) -> GeneralLattice:
    """Sublattice spanned by ``h^(a)_xi``; orbit size is ``det F_gamma`` over its covolume."""
    nc = set(null_convex_blocks(mu))
    xi = {}
    for a, i in mu.block_keys():
        color = mu.blocks[a - 1]
        below = color[i][0] if i < len(color) else 0
        xi[(a, i)] = color[i - 1][0] if (a, i) in nc else below + 1
    basis_cols = [velocity(mu, a, xi[(a, i)]) for a, i in mu.block_keys()]
    volume = abs(det_bareiss([list(r) for r in zip(*basis_cols)])) if basis_cols else 1
    size = Fraction(det_bareiss(f_gamma(mu, gamma)) if basis_cols else 1, volume)
    return GeneralLattice(xi, volume, size, tuple(sorted(nc)))


def predicted_cell_volume(mu: SolitonContent) -> int:
    """Product of ``l_i - l_(i+1)`` over null convex blocks."""
    out = 1
    for a, i in null_convex_blocks(mu):
        color = mu.blocks[a - 1]
        below = color[i][0] if i < len(color) else 0
        out *= color[i - 1][0] - below
    return out


# scattering ------------------------------------------------------------------

def basis_generators(mu: SolitonContent) -> list[tuple[int, int]]:
    """``T^(a)_eta`` per block with ``eta = l_(i+1) + 1``; their velocities span ``Z^g``."""
    out = []
    for a, i in mu.block_keys():
        color = mu.blocks[a - 1]
        out.append((a, color[i][0] + 1 if i < len(color) else 1))
    return out


@dataclass(frozen=True)
class ScatteringData:
    path: tuple[int, ...]
    angle: AngleVariable
    gamma: tuple[int, ...]
    base: tuple[int, ...]
    generators: tuple[tuple[int, int], ...]
    word_to_base: tuple[int, ...]
    torus_coordinate: tuple[int, ...]
    orbit_size: int = field(default=0)


def direct_scattering(p: Sequence[int], n: int, generators: Sequence[tuple[int, int]] | None = None,
                      budget: int = 200_000) -> ScatteringData:
    """Angle variable of ``p`` and its torus coordinate, anchored at the least highest path."""
    p = tuple(p)
    mu = soliton_content(p, n)
    if generators is None:
        vac = mu.vacancy_numbers()
        generators = default_generators(mu) if all(x >= 1 for x in vac.values()) else admissible_generators(mu)
    generators = tuple(generators)
    orbit = orbit_closure(p, n, generators, budget)
    highest = sorted(q for q in orbit if is_highest(q, n))
    if not highest:
        raise NoHighestPathInOrbit(f"no highest path reachable from {format_path(p)}")
    base = highest[0]
    word = orbit[base]
    av = shift_omega(split(kkr_forward(base, n)), [-x for x in word_velocity(mu, generators, word)])
    gamma = order_of_symmetry(av)
    coord = [-x for x in word_velocity(mu, generators, word)]
    reduced = LatticeReducer(f_gamma(mu, gamma)).reduce(coord) if coord else ()
    return ScatteringData(p, av, gamma, base, generators, tuple(word), tuple(reduced), len(orbit))


def _kkr_route(av: AngleVariable) -> tuple[int, ...]:
    mu = av.content
    gens = basis_generators(mu)
    if not gens:
        return (1,) * mu.L
    cols = [velocity(mu, r, l) for r, l in gens]
    matrix = [list(r) for r in zip(*cols)]
    d = solve_exact(matrix, list(av.omega))
    if any(x.denominator != 1 for x in d):
        raise ArithmeticError("generator velocities do not span the integer lattice")
    start = kkr_backward(AngleVariable(mu, (0,) * len(av.omega), av.lambdas).to_rigged())
    exps = []
    for (r, l), x in zip(gens, d):
        x = int(x)
        if x < 0:
            x %= simulated_period(r, l, start, mu.n)
        exps.append(x)
    return apply_word(start, mu.n, gens, exps)


def _theta_route(av: AngleVariable) -> tuple[int, ...]:
    from .tropical import ThetaData

    return ThetaData(av.content).path(av.rigging_vector())


def inverse_scattering(av: AngleVariable, route: str = "both") -> tuple[int, ...]:
    """Path of an angle variable by the theta formula, by KKR, or by both with a cross-check."""
    if route == "theta":
        return _theta_route(av)
    if route == "kkr":
        return _kkr_route(av)
    via_theta = _theta_route(av)
    via_kkr = _kkr_route(av)
    if via_theta != via_kkr:
        raise RoutesDisagree(
            f"theta gives {format_path(via_theta)}, KKR gives {format_path(via_kkr)}",
            {"content": av.content.describe(), "omega": av.omega, "lambdas": av.lambdas})
    return via_theta


def torus_index(mu: SolitonContent, gamma: Sequence[int]) -> int:
    return abs(det_bareiss(f_gamma(mu, gamma))) if mu.block_keys() else 1


def orbit_count_product(mu: SolitonContent, gamma: Sequence[int]) -> Fraction:
    vac = mu.vacancy_numbers()
    return prod((Fraction(lambda_counts(mu.mult(*k), vac[k])[1].get(g, 0) * g, mu.mult(*k))
                 for k, g in zip(mu.block_keys(), gamma)), start=Fraction(1))
