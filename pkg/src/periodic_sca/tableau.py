"""Semistandard tableaux, Schensted insertions and the combinatorial R.

A tableau is stored as a tuple of rows, each row a tuple of letters.
Intermediate products of insertion have arbitrary Young shape, so nothing
here assumes rectangles except :func:`combinatorial_R`.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import CapacityExceeded, InternalInvariantViolation

DEFAULT_TABLEAU_LIMIT = 200_000

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class Tableau:
    rows: Rows

    @classmethod
    def parse(cls, text: str) -> "Tableau":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(tuple(int(ch) for ch in part) for part in text.split("/")))

    def __str__(self) -> str:
        return "/".join("".join(str(x) for x in row) for row in self.rows)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows if len(row) > j)

    def row_word(self) -> tuple[int, ...]:
        """Letters read row by row from the bottom row up, left to right."""
        return tuple(x for row in reversed(self.rows) for x in row)

    def content(self, alphabet: int) -> tuple[int, ...]:
        counts = [0] * alphabet
        for row in self.rows:
            for x in row:
                counts[x - 1] += 1
        return tuple(counts)

    def is_semistandard(self) -> bool:
        shape = self.shape
        if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
            return False
        for row in self.rows:
            if any(row[k] > row[k + 1] for k in range(len(row) - 1)):
                return False
        for i in range(len(self.rows) - 1):
            upper, lower = self.rows[i], self.rows[i + 1]
            if any(upper[k] >= lower[k] for k in range(len(lower))):
                return False
        return True


def row_insert(t: Tableau, x: int) -> Tableau:
    """Row insertion ``t <- x``: ``x`` bumps the leftmost entry larger than it."""
    rows = [list(r) for r in t.rows]
    for row in rows:
        k = bisect_right(row, x)
        if k == len(row):
            row.append(x)
            return Tableau(tuple(tuple(r) for r in rows))
        row[k], x = x, row[k]
    rows.append([x])
    return Tableau(tuple(tuple(r) for r in rows))


def column_insert(x: int, t: Tableau) -> Tableau:
    """Column insertion ``x -> t``: ``x`` bumps the topmost entry not less than it."""
    rows = [list(r) for r in t.rows]
    j = 0
    while True:
        col = [row[j] for row in rows if len(row) > j]
        k = bisect_left(col, x)
        if k == len(col):
            if k == len(rows):
                rows.append([x])
            else:
                rows[k].append(x)
            return Tableau(tuple(tuple(r) for r in rows))
        rows[k][j], x = x, rows[k][j]
        j += 1


def insert_word_by_rows(t: Tableau, word) -> Tableau:
    for x in word:
        t = row_insert(t, x)
    return t


def count_rectangles(r: int, l: int, n: int) -> int:
    """Number of semistandard r x l rectangles over {1..n+1} (hook-content formula)."""
    num = 1
    den = 1
    alphabet = n + 1
    for i in range(r):
        for j in range(l):
            num *= alphabet + j - i
            den *= (r - i) + (l - j) - 1
    return num // den


def enumerate_tableaux(r: int, l: int, n: int, limit: int = DEFAULT_TABLEAU_LIMIT) -> list[Tableau]:
    """All semistandard r x l rectangles over {1..n+1} in row-major lexicographic order."""
    if not (1 <= r <= n and l >= 1):
        raise ValueError(f"need 1 <= r <= n and l >= 1, got r={r}, l={l}, n={n}")
    count = count_rectangles(r, l, n)
    if count > limit:
        raise CapacityExceeded(f"|B^({r},{l})| = {count} exceeds the limit {limit}")
    return list(_enumerate_rectangles(r, l, n))


@lru_cache(maxsize=None)
def _enumerate_rectangles(r: int, l: int, n: int) -> tuple[Tableau, ...]:
    alphabet = n + 1
    out: list[Tableau] = []

    def extend(prefix: list[tuple[int, ...]]):
        i = len(prefix)
        if i == r:
            out.append(Tableau(tuple(prefix)))
            return
        for row in combinations_with_replacement(range(i + 1, alphabet + 1), l):
            if i and any(row[k] <= prefix[-1][k] for k in range(l)):
                continue
            if row[-1] > alphabet - (r - 1 - i):
                continue
            prefix.append(row)
            extend(prefix)
            prefix.pop()

    extend([])
    return tuple(out)


def highest_tableau(r: int, l: int) -> Tableau:
    """The tableau whose row j is filled with j."""
    return Tableau(tuple((j + 1,) * l for j in range(r)))


def local_energy_from_shape(shape: tuple[int, ...], r: int, l: int) -> int:
    if shape == (l + 1,) + (l,) * (r - 1):
        return 0
    if shape == (l,) * r + (1,):
        return 1
    raise InternalInvariantViolation(f"unexpected product shape {shape} for B^({r},{l})")


class RMatrix:
    """The combinatorial R on ``B^{r,l} (x) B^{1,1}`` for a fixed alphabet.

    Products ``b' <- c'`` of every element of ``B^{1,1} (x) B^{r,l}`` are
    tabulated once; R is then a lookup of the product ``c -> b``.
    """

    def __init__(self, r: int, l: int, n: int, limit: int = DEFAULT_TABLEAU_LIMIT):
        self.r, self.l, self.n = r, l, n
        self.tableaux = enumerate_tableaux(r, l, n, limit)
        self.index = {t: i for i, t in enumerate(self.tableaux)}
        alphabet = n + 1
        by_product: dict[Tableau, tuple[int, int]] = {}
        for bi, b in enumerate(self.tableaux):
            for c in range(1, alphabet + 1):
                prod = row_insert(b, c)
                if prod in by_product:
                    raise InternalInvariantViolation(f"two preimages of product {prod}")
                by_product[prod] = (c, bi)
        self._by_product = by_product
        size = len(self.tableaux)
        self.out_letter = [0] * (size * alphabet)
        self.next_carrier = [0] * (size * alphabet)
        self.energy = [0] * (size * alphabet)
        for bi, b in enumerate(self.tableaux):
            for c in range(1, alphabet + 1):
                prod = column_insert(c, b)
                hit = by_product.get(prod)
                if hit is None:
                    raise InternalInvariantViolation(f"no R image for {b} (x) {c}")
                k = bi * alphabet + (c - 1)
                self.out_letter[k] = hit[0]
                self.next_carrier[k] = hit[1]
                self.energy[k] = local_energy_from_shape(prod.shape, r, l)

    @property
    def alphabet(self) -> int:
        return self.n + 1

    def __len__(self) -> int:
        return len(self.tableaux)

    def apply(self, b: Tableau, c: int) -> tuple[int, Tableau, int]:
        k = self.index[b] * self.alphabet + (c - 1)
        return self.out_letter[k], self.tableaux[self.next_carrier[k]], self.energy[k]

    def inverse(self, c_prime: int, b_prime: Tableau) -> tuple[Tableau, int]:
        """Preimage ``b (x) c`` of ``c' (x) b'`` found by exhaustive search."""
        hits = [(b, c) for b in self.tableaux for c in range(1, self.alphabet + 1)
                if self.apply(b, c)[:2] == (c_prime, b_prime)]
        if len(hits) != 1:
            raise InternalInvariantViolation(f"{len(hits)} preimages of {c_prime} (x) {b_prime}")
        return hits[0]


@lru_cache(maxsize=64)
def r_matrix(r: int, l: int, n: int) -> RMatrix:
    return RMatrix(r, l, n)


def combinatorial_R(b: Tableau, c: int, n: int) -> tuple[int, Tableau, int]:
    """Return ``(c', b', H)`` with ``R(b (x) c) = c' (x) b'`` and local energy ``H``."""
    r = len(b.rows)
    l = len(b.rows[0])
    return r_matrix(r, l, n).apply(b, c)
