"""Soliton content (an n-tuple of Young diagrams) and vacancy numbers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

Block = tuple[int, int]  # (length, multiplicity)


def cartan(a: int, b: int) -> int:
    """Entry of the A_n Cartan matrix."""
    if a == b:
        return 2
    if abs(a - b) == 1:
        return -1
    return 0


def blocks_of(partition: Iterable[int]) -> tuple[Block, ...]:
    counts = Counter(x for x in partition if x > 0)
    return tuple(sorted(counts.items(), reverse=True))


@dataclass(frozen=True)
class SolitonContent:
    """Diagrams mu^(1..n) stored as blocks with strictly decreasing lengths."""

    L: int
    blocks: tuple[tuple[Block, ...], ...]

    def __post_init__(self):
        for color in self.blocks:
            lengths = [l for l, _ in color]
            if any(m <= 0 for _, m in color) or lengths != sorted(set(lengths), reverse=True):
                raise ValueError(f"malformed blocks {color}")

    @classmethod
    def from_partitions(cls, partitions: Sequence[Iterable[int]], L: int) -> "SolitonContent":
        return cls(L, tuple(blocks_of(p) for p in partitions))

    @property
    def n(self) -> int:
        return len(self.blocks)

    def partition(self, a: int) -> tuple[int, ...]:
        """mu^(a) as a partition, with mu^(0) = (1^L) and mu^(n+1) empty."""
        if a == 0:
            return (1,) * self.L
        if a == self.n + 1:
            return ()
        return tuple(l for l, m in self.blocks[a - 1] for _ in range(m))

    def partitions(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.partition(a) for a in range(1, self.n + 1))

    def size(self, a: int) -> int:
        return sum(self.partition(a))

    def largest_part(self, a: int) -> int:
        color = self.blocks[a - 1]
        return color[0][0] if color else 0

    def is_empty(self) -> bool:
        return all(not c for c in self.blocks)

    def block_keys(self) -> list[tuple[int, int]]:
        """Index set of blocks ``(a, i)`` (1-based), color-major."""
        return [(a, i) for a in range(1, self.n + 1) for i in range(1, len(self.blocks[a - 1]) + 1)]

    def string_keys(self) -> list[tuple[int, int, int]]:
        """Index set of strings ``(a, i, alpha)`` (1-based)."""
        return [(a, i, alpha) for a, i in self.block_keys() for alpha in range(1, self.mult(a, i) + 1)]

    def length(self, a: int, i: int) -> int:
        return self.blocks[a - 1][i - 1][0]

    def mult(self, a: int, i: int) -> int:
        return self.blocks[a - 1][i - 1][1]

    def weights(self) -> tuple[int, ...]:
        """Letter counts #(1..n+1) of any path with this content."""
        return tuple(self.size(a - 1) - self.size(a) for a in range(1, self.n + 2))

    def vacancy(self, a: int, ell: int) -> int:
        """Vacancy number of a color-``a`` string of length ``ell``."""
        total = self.L if a == 1 else 0
        for b in (a - 1, a, a + 1):
            if 1 <= b <= self.n:
                c = cartan(a, b)
                total -= c * sum(min(ell, l) * m for l, m in self.blocks[b - 1])
        return total

    def vacancy_numbers(self) -> dict[tuple[int, int], int]:
        return {(a, i): self.vacancy(a, self.length(a, i)) for a, i in self.block_keys()}

    def is_configuration(self) -> bool:
        return all(p >= 0 for p in self.vacancy_numbers().values())

    def describe(self) -> str:
        return "(" + ",".join("(" + "".join(str(x) for x in self.partition(a)) + ")"
                              for a in range(1, self.n + 1)) + ")"


def vacancy_numbers(mu: SolitonContent) -> dict[tuple[int, int], int]:
    return mu.vacancy_numbers()


def partitions_up_to(total: int, max_part: int | None = None) -> Iterable[tuple[int, ...]]:
    """All partitions of every size ``0..total`` (largest parts first)."""
    for size in range(total + 1):
        yield from partitions_of(size, max_part)


def partitions_of(size: int, max_part: int | None = None) -> Iterable[tuple[int, ...]]:
    if max_part is None:
        max_part = size
    if size == 0:
        yield ()
        return
    for first in range(min(size, max_part), 0, -1):
        for rest in partitions_of(size - first, first):
            yield (first,) + rest


def configurations(n: int, L: int) -> Iterable[SolitonContent]:
    """Every content with ``L >= |mu^(1)| >= ... >= |mu^(n)|`` and all vacancy numbers nonnegative."""
    def sizes(prefix: tuple[int, ...]):
        if len(prefix) == n:
            yield prefix
            return
        for s in range(prefix[-1] if prefix else L, -1, -1):
            yield from sizes(prefix + (s,))

    for size_vector in sizes(()):
        for parts in _product_of_partitions(size_vector):
            mu = SolitonContent.from_partitions(parts, L)
            if mu.is_configuration():
                yield mu


def _product_of_partitions(size_vector: Sequence[int]) -> Iterable[tuple[tuple[int, ...], ...]]:
    if not size_vector:
        yield ()
        return
    for head in partitions_of(size_vector[0]):
        for tail in _product_of_partitions(size_vector[1:]):
            yield (head,) + tail
