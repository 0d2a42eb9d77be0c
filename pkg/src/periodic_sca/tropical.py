"""Tropical tau function, tropical Riemann theta function and path reconstruction.

Theta minimizes ``n B n / 2 + z . n`` over the integer lattice.  The argument
is first reduced modulo ``B Z^G`` with the exact quasi-periodicity law, then
all lattice points inside a certified ellipsoid around the real minimizer
are enumerated.  The ellipsoid radius is steered in floating point with a
safety margin; every candidate is scored in exact integer arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from .content import SolitonContent, cartan
from .errors import NegativeOccupancy, NonBinaryDigit
from .linalg import (
    dot,
    inverse_exact,
    is_symmetric,
    ldl_exact,
    mat_vec,
)

_MARGIN = 1e-6


class ThetaData:
    """Period matrix ``B``, vacancy vector and velocities indexed by strings."""

    def __init__(self, mu: SolitonContent):
        self.mu = mu
        self.keys = mu.string_keys()
        vac = mu.vacancy_numbers()
        self.p_vec = [vac[(a, i)] for a, i, _ in self.keys]
        self.B = [[(vac[(a, i)] if (a, i, al) == (b, j, be) else 0)
                   + cartan(a, b) * min(mu.length(a, i), mu.length(b, j))
                   for b, j, be in self.keys] for a, i, al in self.keys]
        self.G = len(self.keys)
        self.L = mu.L
        self.n = mu.n

    def h(self, c: int, l) -> list[int]:
        """Velocity of ``T^(c)_l`` over strings; ``l=None`` means infinity."""
        if c == self.n + 1:
            return [0] * self.G
        return [(self.mu.length(a, i) if l is None else min(l, self.mu.length(a, i))) if a == c else 0
                for a, i, _ in self.keys]

    def h_inf(self, c: int) -> list[int]:
        return self.h(c, None)

    @property
    def one(self) -> list[int]:
        return [1] * self.G

    def check(self) -> None:
        """Assert the structural identities of B; raises on failure."""
        if not is_symmetric(self.B):
            raise AssertionError("B is not symmetric")
        if mat_vec(self.B, self.one) != [self.L * x for x in self.h(1, 1)]:
            raise AssertionError("B 1 != L h^(1)_1")
        for c in range(1, self.n + 1):
            if sum(self.h_inf(c)) != self.mu.size(c):
                raise AssertionError(f"1 . h^({c})_inf != |mu^({c})|")
        ldl_exact(self.B)

    @cached_property
    def B_inv(self) -> list[list[Fraction]]:
        return inverse_exact(self.B)

    @cached_property
    def _float_factor(self):
        u, d = ldl_exact(self.B)
        return ([[float(x) for x in row] for row in u], [float(x) for x in d],
                [[float(x) for x in row] for row in self.B_inv])

    def quadratic(self, v: Sequence) -> Fraction:
        return Fraction(sum(v[i] * self.B[i][j] * v[j] for i in range(self.G) for j in range(self.G)))

    def theta(self, z: Sequence) -> Fraction:
        """Tropical Riemann theta ``-min_n (n B n / 2 + z . n)``."""
        if self.G == 0:
            return Fraction(0)
        z = [Fraction(x) for x in z]
        _, _, binv = self._float_factor
        zf = [float(x) for x in z]
        shift = [round(sum(binv[i][j] * zf[j] for j in range(self.G))) for i in range(self.G)]
        bshift = mat_vec(self.B, shift)
        z0 = [x - y for x, y in zip(z, bshift)]
        value = self._theta_reduced(z0)
        return value + dot(shift, z0) + self.quadratic(shift) / 2

    def _theta_reduced(self, z: list[Fraction]) -> Fraction:
        u, d, binv = self._float_factor
        G = self.G
        B = self.B
        zf = [float(x) for x in z]
        center = [-sum(binv[i][j] * zf[j] for j in range(G)) for i in range(G)]
        den = 1
        for x in z:
            den = math.lcm(den, x.denominator)
        z_int = [int(x * 2 * den) for x in z]  # objective scaled by 2*den stays integral

        def exact(nv):
            quad = 0
            for i in range(G):
                if nv[i]:
                    row = B[i]
                    quad += nv[i] * sum(row[j] * nv[j] for j in range(G) if nv[j])
            return quad * den + sum(a * b for a, b in zip(z_int, nv))

        def qform(nv):
            total = 0.0
            for i in range(G - 1, -1, -1):
                y = nv[i] - center[i] + sum(u[i][j] * (nv[j] - center[j]) for j in range(i + 1, G))
                total += d[i] * y * y
            return total

        start = [round(c) for c in center]
        best = [exact(start), start]
        radius = [qform(start)]
        nv = [0] * G

        def descend(i: int, partial: float):
            s = sum(u[i][j] * (nv[j] - center[j]) for j in range(i + 1, G))
            mid = center[i] - s
            room = radius[0] * (1 + _MARGIN) + _MARGIN - partial
            if room < 0:
                return
            half = math.sqrt(room / d[i])
            lo = math.ceil(mid - half)
            hi = math.floor(mid + half)
            for x in range(lo, hi + 1):
                y = x - mid
                val = partial + d[i] * y * y
                nv[i] = x
                if i == 0:
                    e = exact(nv)
                    if e < best[0]:
                        best[0], best[1] = e, list(nv)
                        radius[0] = min(radius[0], val)
                else:
                    descend(i - 1, val)
            nv[i] = 0

        descend(G - 1, 0.0)
        self.last_minimizer = tuple(best[1])
        return -Fraction(best[0], 2 * den)

    def theta_box(self, z: Sequence, radius: int) -> Fraction:
        """Exhaustive minimum over ``|n_i| <= radius``; a slow cross-check."""
        z = [Fraction(x) for x in z]
        best = None
        for nv in product(range(-radius, radius + 1), repeat=self.G):
            val = self.quadratic(nv) / 2 + dot(z, nv)
            if best is None or val < best:
                best = val
        return -best

    # path and carrier reconstruction -------------------------------------

    def J(self, r_vec: Sequence[int]) -> list[Fraction]:
        return [Fraction(r) - Fraction(p, 2) for r, p in zip(r_vec, self.p_vec)]

    def _theta_table(self, J: list[Fraction], extra=None) -> list[list[Fraction]]:
        h1 = self.h(1, 1)
        hs = [None] + [self.h_inf(c) for c in range(1, self.n + 1)] + [[0] * self.G]
        table = []
        for k in range(self.L + 1):
            row = [None]
            for dd in range(1, self.n + 2):
                z = [J[i] - k * h1[i] + hs[dd][i] + (extra[i] if extra else 0) for i in range(self.G)]
                row.append(self.theta(z))
            table.append(row)
        return table

    def path(self, r_vec: Sequence[int]) -> tuple[int, ...]:
        """Path digits from double differences of theta."""
        if self.G == 0:
            return (1,) * self.L
        t = self._theta_table(self.J(r_vec))
        letters = []
        for k in range(1, self.L + 1):
            digits = [0] * (self.n + 2)
            for a in range(2, self.n + 2):
                x = t[k][a] - t[k - 1][a] - t[k][a - 1] + t[k - 1][a - 1]
                if x not in (0, 1):
                    raise NonBinaryDigit(f"x[{k},{a}] = {x}")
                digits[a] = int(x)
            digits[1] = 1 - sum(digits[2:])
            if digits[1] not in (0, 1):
                raise NonBinaryDigit(f"x[{k},1] = {digits[1]}")
            letters.append(digits.index(1))
        return tuple(letters)

    def carrier(self, r_vec: Sequence[int], l: int, k: int) -> tuple[int, ...]:
        """Letter counts ``(y_1, ..., y_(n+1))`` of the ``B^{1,l}`` carrier after site ``k``."""
        J = self.J(r_vec)
        h1 = self.h(1, 1)
        hl = self.h(1, l)
        hs = [None] + [self.h_inf(c) for c in range(1, self.n + 1)] + [[0] * self.G]

        def th(vec, with_l):
            return self.theta([J[i] - k * h1[i] + vec[i] + (hl[i] if with_l else 0) for i in range(self.G)])

        y = [0] * (self.n + 2)
        for a in range(2, self.n + 2):
            y[a] = th(hs[a], False) - th(hs[a], True) - th(hs[a - 1], False) + th(hs[a - 1], True)
        y[1] = l - sum(y[2:])
        if any(v < 0 for v in y[1:]) or any(Fraction(v).denominator != 1 for v in y[1:]):
            raise NegativeOccupancy(f"carrier occupancy {y[1:]} at k={k}")
        return tuple(int(v) for v in y[1:])

    def time_average(self, l, a: int) -> Fraction:
        """Average number of letters ``a`` in the ``B^{1,l}`` carrier (``l=None``: infinity)."""
        if a == 1:
            total = self.mu.largest_part(1) if l is None else l
            return total - sum(self.time_average(l, b) for b in range(2, self.n + 2))
        hl = self.h(1, l)
        diff = [x - y for x, y in zip(self.h_inf(a - 1), self.h_inf(a) if a <= self.n else [0] * self.G)]
        return dot(hl, mat_vec(self.B_inv, diff))

    def quasi_periodicity_holds(self, z: Sequence, m: Sequence[int]) -> bool:
        v = mat_vec(self.B, m)
        lhs = self.theta([Fraction(x) + y for x, y in zip(z, v)])
        rhs = self.theta(z) + dot(v, mat_vec(self.B_inv, [Fraction(x) + Fraction(y, 2) for x, y in zip(z, v)]))
        return lhs == rhs

    def hirota_holds(self, J: Sequence, d: int) -> bool:
        """Theta form of the tropical Hirota identity for ``2 <= d <= n+1``."""
        h1_inf = self.h_inf(1)
        h11 = self.h(1, 1)
        hd = self.h_inf(d) if d <= self.n else [0] * self.G
        hd1 = self.h_inf(d - 1)

        def th(*vecs):
            return self.theta([Fraction(J[i]) + sum(v[i] for v in vecs) for i in range(self.G)])

        lhs = th(h1_inf, hd1) + th(h11, hd)
        rhs = max(th(h1_inf, hd) + th(h11, hd1), th(h11, h1_inf, hd1) + th(hd) - 1)
        return lhs == rhs


# tropical tau function ----------------------------------------------------

def _tau_terms(mu: SolitonContent):
    keys = mu.string_keys()
    quad = [[cartan(a, b) * min(mu.length(a, i), mu.length(b, j)) for b, j, _ in keys]
            for a, i, _ in keys]
    return keys, quad


def tau(mu: SolitonContent, r_vec: Sequence[int], k: int, d: int, bar: bool = False) -> int:
    """Tropical tau function: minimum over 0/1 occupations of every string.

    With ``bar`` the color-1 riggings are raised by their string lengths.
    """
    keys, quad = _tau_terms(mu)
    G = len(keys)
    lin = []
    for idx, (a, i, _) in enumerate(keys):
        c = r_vec[idx]
        if bar and a == 1:
            c += mu.length(a, i)
        if a == 1:
            c -= k
        if a == d:
            c += mu.length(a, i)
        lin.append(c)
    best = 0
    for mask in range(1, 1 << G):
        on = [t for t in range(G) if mask >> t & 1]
        val = sum(quad[s][t] for s in on for t in on) // 2 + sum(lin[t] for t in on)
        if val < best:
            best = val
    return -best


def tau_path(mu: SolitonContent, r_vec: Sequence[int]) -> tuple[int, ...]:
    """Path from double differences of tau (digits x_(k,a), 2 <= a <= n+1)."""
    n = mu.n
    t = [[None] + [tau(mu, r_vec, k, dd) for dd in range(1, n + 2)] for k in range(mu.L + 1)]
    letters = []
    for k in range(1, mu.L + 1):
        digits = [0] * (n + 2)
        for a in range(2, n + 2):
            x = t[k][a] - t[k - 1][a] - t[k][a - 1] + t[k - 1][a - 1]
            if x not in (0, 1):
                raise NonBinaryDigit(f"x[{k},{a}] = {x}")
            digits[a] = x
        digits[1] = 1 - sum(digits[2:])
        if digits[1] not in (0, 1):
            raise NonBinaryDigit(f"x[{k},1] = {digits[1]}")
        letters.append(digits.index(1))
    return tuple(letters)


def tau_hirota_holds(mu: SolitonContent, r_vec: Sequence[int], k: int, d: int) -> bool:
    lhs = tau(mu, r_vec, k - 1, d) + tau(mu, r_vec, k, d - 1, bar=True)
    rhs = max(tau(mu, r_vec, k, d, bar=True) + tau(mu, r_vec, k - 1, d - 1),
              tau(mu, r_vec, k, d) + tau(mu, r_vec, k - 1, d - 1, bar=True) - 1)
    return lhs == rhs


def replica_tau_table(data: ThetaData, r_vec: Sequence[int], M: int,
                      ks: Sequence[int]) -> dict[tuple[int, int], Fraction]:
    """Tau of the M-fold stacked configuration for every ``k`` in ``ks`` and every ``d``.

    Each string carries M binary replicas; ordering them reduces the replicas to one
    occupation ``0..M``.  The diagonal of ``B`` supplies the replica-breaking term.
    """
    G, n = data.G, data.n
    lin = [2 * r - p for r, p in zip(r_vec, data.p_vec)]
    h1 = data.h(1, 1)
    hds = [data.h_inf(dd) for dd in range(1, n + 1)]
    best: dict[tuple[int, ...], int] = {}
    for nv in product(range(M + 1), repeat=G):
        base = sum(nv[i] * sum(data.B[i][j] * nv[j] for j in range(G)) for i in range(G) if nv[i])
        base += sum(a * b for a, b in zip(lin, nv))
        key = (dot(h1, nv),) + tuple(dot(h, nv) for h in hds)
        if key not in best or base < best[key]:
            best[key] = base
    out = {}
    for k in ks:
        for dd in range(1, n + 2):
            out[(k, dd)] = -Fraction(min(
                base - 2 * k * key[0] + (2 * key[dd] if dd <= n else 0)
                for key, base in best.items()), 2)
    return out


def replica_digits(data: ThetaData, r_vec: Sequence[int], M: int) -> tuple[int, ...]:
    """Path digits of the M-fold configuration read on the window starting at ``ML/2``."""
    L, n = data.L, data.n
    offset = M * L // 2
    t = replica_tau_table(data, r_vec, M, range(offset, offset + L + 1))
    letters = []
    for k in range(offset + 1, offset + L + 1):
        digits = [0] * (n + 2)
        for a in range(2, n + 2):
            digits[a] = t[(k, a)] - t[(k - 1, a)] - t[(k, a - 1)] + t[(k - 1, a - 1)]
        digits[1] = 1 - sum(digits[2:])
        if any(x not in (0, 1) for x in digits[1:]):
            raise NonBinaryDigit(f"replica digits {digits[1:]} at k={k}")
        letters.append(digits.index(1))
    return tuple(letters)


def theta_path(data: ThetaData, r_vec: Sequence[int]) -> tuple[int, ...]:
    return data.path(r_vec)


def theta_carrier(data: ThetaData, r_vec: Sequence[int], l: int, k: int) -> tuple[int, ...]:
    return data.carrier(r_vec, l, k)


def time_average(data: ThetaData, l, a: int) -> Fraction:
    return data.time_average(l, a)


def theta(data: ThetaData, z: Sequence) -> Fraction:
    return data.theta(z)
