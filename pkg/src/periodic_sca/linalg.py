"""Exact integer and rational linear algebra.

Matrices are plain sequences of rows.  Entries are ``int`` or
``fractions.Fraction``; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NotPositiveDefinite, SingularMatrix

Matrix = Sequence[Sequence[int | Fraction]]
Vector = Sequence[int | Fraction]


def as_int_matrix(m: Matrix) -> list[list[int]]:
    out = []
    for row in m:
        r = []
        for x in row:
            fx = Fraction(x)
            if fx.denominator != 1:
                raise ValueError(f"non-integer entry {x}")
            r.append(int(fx))
        out.append(r)
    return out


def _check_square(m: Matrix) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    return n


def _bareiss_int(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def det_bareiss(m: Matrix) -> int | Fraction:
    """Determinant by fraction-free elimination.

    Rational matrices are scaled row-wise to integers first, so the result is
    an ``int`` for integer input and a ``Fraction`` otherwise.
    """
    n = _check_square(m)
    scale = Fraction(1)
    rows = []
    for row in m:
        fr = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        scale /= d
        rows.append([int(x * d) for x in fr])
    det = _bareiss_int(rows) if n else 1
    if scale == 1:
        return det
    return Fraction(det) * scale


def det_cofactor(m: Matrix) -> int | Fraction:
    """Laplace expansion along the first row; exponential, for cross-checks only."""
    n = _check_square(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [list(row[:j]) + list(row[j + 1:]) for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def solve_exact(m: Matrix, b: Vector) -> list[Fraction]:
    """Solve ``m x = b`` by Gauss-Jordan elimination over the rationals."""
    n = _check_square(m)
    if len(b) != n:
        raise ValueError("dimension mismatch")
    a = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        rowc = [x / pv for x in a[col]]
        a[col] = rowc
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], rowc)]
    return [a[i][n] for i in range(n)]


def inverse_exact(m: Matrix) -> list[list[Fraction]]:
    n = _check_square(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        rowc = [x / pv for x in a[col]]
        a[col] = rowc
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], rowc)]
    return [row[n:] for row in a]


def mat_vec(m: Matrix, v: Vector) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def dot(u: Vector, v: Vector):
    return sum(x * y for x, y in zip(u, v))


def transpose(m: Matrix) -> list[list]:
    return [list(col) for col in zip(*m)]


def replace_column(m: Matrix, j: int, v: Vector) -> list[list]:
    return [[v[i] if k == j else x for k, x in enumerate(row)] for i, row in enumerate(m)]


def in_lattice(m: Matrix, v: Vector) -> bool:
    """True when ``v`` lies in the lattice spanned by the columns of ``m``."""
    x = solve_exact(m, v)
    return all(c.denominator == 1 for c in x)


def ldl_exact(m: Matrix) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Return ``(U, d)`` with ``m = U^T diag(d) U`` and ``U`` unit upper triangular.

    Raises NotPositiveDefinite as soon as a pivot is not positive.
    """
    n = _check_square(m)
    a = [[Fraction(x) for x in row] for row in m]
    u = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d: list[Fraction] = []
    for k in range(n):
        piv = a[k][k]
        if piv <= 0:
            raise NotPositiveDefinite(f"leading pivot {k} is {piv}")
        d.append(piv)
        for j in range(k + 1, n):
            u[k][j] = a[k][j] / piv
        for i in range(k + 1, n):
            f = a[k][i]
            if f == 0:
                continue
            for j in range(k + 1, n):
                a[i][j] -= f * u[k][j]
    return u, d


def is_positive_definite(m: Matrix) -> bool:
    try:
        ldl_exact(m)
    except NotPositiveDefinite:
        return False
    return True


def is_symmetric(m: Matrix) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def mobius(k: int) -> int:
    if k < 1:
        raise ValueError("mobius is defined for positive integers")
    result = 1
    p = 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    if k > 1:
        result = -result
    return result


def divisors(k: int) -> list[int]:
    k = abs(k)
    if k == 0:
        raise ValueError("0 has infinitely many divisors")
    small = [d for d in range(1, int(k ** 0.5) + 1) if k % d == 0]
    return sorted(set(small + [k // d for d in small]))


def prime_factors(k: int) -> list[int]:
    out = []
    p = 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def lcm_rationals(values: Iterable[Fraction | int]) -> int:
    """Least positive integer in the intersection of the groups ``r Z``.

    Since ``Z`` intersected with ``(a/b) Z`` is ``|a| Z`` for a reduced
    fraction, this is the lcm of the reduced numerators.
    """
    result = 1
    seen = False
    for v in values:
        f = Fraction(v)
        if f == 0:
            raise ValueError("zero has no multiples")
        result = lcm(result, abs(f.numerator))
        seen = True
    if not seen:
        raise ValueError("empty list")
    return result


def binomial(x: int | Fraction, k: int) -> Fraction:
    """Extended binomial ``x (x-1) ... (x-k+1) / k!`` valid for any integer ``x``."""
    if k < 0:
        return Fraction(0)
    num = Fraction(1)
    for i in range(k):
        num *= Fraction(x) - i
        num /= i + 1
    return num


class LatticeReducer:
    """Canonical representatives of ``Z^g / M Z^g`` for a full-rank integer ``m``.

    The columns of ``m`` are brought into echelon form by unimodular column
    operations; reduction then walks the pivots in order.
    """

    def __init__(self, m: Matrix):
        g = _check_square(m)
        basis = [list(col) for col in zip(*as_int_matrix(m))]
        tri: list[list[int]] = []
        for j in range(g):
            pool = [b for b in basis if b[j] != 0]
            rest = [b for b in basis if b[j] == 0]
            while len(pool) > 1:
                pool.sort(key=lambda b: abs(b[j]))
                head = pool[0]
                nxt = []
                for b in pool[1:]:
                    q = b[j] // head[j]
                    nb = [x - q * y for x, y in zip(b, head)]
                    (nxt if nb[j] != 0 else rest).append(nb)
                pool = [head] + nxt
            if not pool:
                raise SingularMatrix("lattice is not full rank")
            head = pool[0]
            if head[j] < 0:
                head = [-x for x in head]
            tri.append(head)
            basis = rest
        self.g = g
        self.basis = tri
        self.index = 1
        for j, b in enumerate(tri):
            self.index *= b[j]

    def reduce(self, v: Vector) -> tuple[int, ...]:
        w = list(v)
        for j, b in enumerate(self.basis):
            q = w[j] // b[j]
            if q:
                w = [x - q * y for x, y in zip(w, b)]
        return tuple(int(x) for x in w)

    def contains(self, v: Vector) -> bool:
        return all(x == 0 for x in self.reduce(v))
