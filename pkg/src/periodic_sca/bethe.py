"""String center equation at q = 0, eigenvalue phases and the N' period."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .content import SolitonContent, cartan
from .errors import CollisionDetected, SingularA, SingularMatrix, ZeroVelocity
from .linalg import det_bareiss, lcm_rationals, replace_column, solve_exact


def a_matrix(mu: SolitonContent) -> list[list[int]]:
    """``A`` over strings: ``delta (p + m) + C min(l, l') - delta_ab delta_ij``."""
    keys = mu.string_keys()
    vac = mu.vacancy_numbers()
    out = []
    for a, i, alpha in keys:
        la = mu.length(a, i)
        row = []
        for b, j, beta in keys:
            x = cartan(a, b) * min(la, mu.length(b, j))
            if a == b and i == j:
                x -= 1
                if alpha == beta:
                    x += vac[(a, i)] + mu.mult(a, i)
            row.append(x)
        out.append(row)
    return out


def string_velocity(mu: SolitonContent, r: int, l: int) -> list[int]:
    return [min(l, mu.length(a, i)) if a == r else 0 for a, i, _ in mu.string_keys()]


def frac_part(x: Fraction) -> Fraction:
    return x - floor(x)


@dataclass(frozen=True)
class BetheRoot:
    """String centers; ``centers`` holds per-block sorted fractional parts."""

    raw: tuple[Fraction, ...]
    centers: tuple[tuple[Fraction, ...], ...]

    def has_collision(self) -> bool:
        return any(len(set(c)) != len(c) for c in self.centers)


def string_centers(obj, check_collisions: bool = True) -> BetheRoot:
    """Solve ``A u = c + r + rho`` for an object exposing ``content`` and ``rigging_vector()``."""
    mu = obj.content if isinstance(obj.content, SolitonContent) else obj.content()
    r = obj.rigging_vector()
    keys = mu.string_keys()
    vac = mu.vacancy_numbers()
    rhs = [Fraction(vac[(a, i)] + mu.mult(a, i) + 1, 2) + r[k] + (alpha - 1)
           for k, (a, i, alpha) in enumerate(keys)]
    try:
        u = solve_exact(a_matrix(mu), rhs) if keys else []
    except SingularMatrix as exc:
        raise SingularA(str(exc)) from exc
    blocks: dict[tuple[int, int], list[Fraction]] = {}
    for (a, i, _), x in zip(keys, u):
        blocks.setdefault((a, i), []).append(frac_part(x))
    centers = tuple(tuple(sorted(blocks[k])) for k in mu.block_keys())
    root = BetheRoot(tuple(u), centers)
    if check_collisions and root.has_collision():
        raise CollisionDetected(f"string centers collide: {centers}")
    return root


def eigenvalue_phase(mu: SolitonContent, r: int, l: int, u: BetheRoot) -> Fraction:
    """``h^(r)_l . (u + 1/2)`` modulo 1."""
    h = string_velocity(mu, r, l)
    return frac_part(sum(hx * (ux + Fraction(1, 2)) for hx, ux in zip(h, u.raw)))


def _lcm_of_ratios(matrix, h) -> int:
    det = det_bareiss(matrix)
    ratios = []
    for j in range(len(h)):
        dj = det_bareiss(replace_column(matrix, j, h))
        if dj != 0:
            ratios.append(Fraction(det) / Fraction(dj))
    if not ratios:
        raise ZeroVelocity("velocity vector is zero")
    return lcm_rationals(ratios)


def n_prime(mu: SolitonContent, r: int, l: int) -> tuple[int, int]:
    """N' computed from ``A`` over strings and from ``F`` over blocks."""
    from .angle import f_matrix, velocity  # local import: angle depends on this module

    via_a = _lcm_of_ratios(a_matrix(mu), string_velocity(mu, r, l))
    via_f = _lcm_of_ratios(f_matrix(mu), velocity(mu, r, l))
    return via_a, via_f
