"""Rigged configurations and the KKR bijection between them and highest paths."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterable, Sequence

from .content import SolitonContent, cartan, vacancy_numbers  # noqa: F401  (re-export)
from .errors import InvalidRiggedConfiguration, NotHighest
from .automaton import is_highest, format_path

BlockRig = tuple[int, tuple[int, ...]]  # (length, sorted riggings)


@dataclass(frozen=True)
class RiggedConfiguration:
    """Per color, blocks of strictly decreasing length with sorted riggings."""

    L: int
    colors: tuple[tuple[BlockRig, ...], ...]

    @classmethod
    def from_strings(cls, L: int, n: int, strings: Iterable[tuple[int, int, int]]) -> "RiggedConfiguration":
        """Build from ``(color, length, rigging)`` triples."""
        per: list[dict[int, list[int]]] = [dict() for _ in range(n)]
        for a, length, rig in strings:
            if length <= 0:
                continue
            per[a - 1].setdefault(length, []).append(rig)
        colors = tuple(tuple((l, tuple(sorted(rs))) for l, rs in sorted(d.items(), reverse=True))
                       for d in per)
        return cls(L, colors)

    @classmethod
    def from_content(cls, mu: SolitonContent, riggings: Sequence[Sequence[Sequence[int]]]) -> "RiggedConfiguration":
        colors = []
        for a, color in enumerate(mu.blocks):
            colors.append(tuple((l, tuple(sorted(riggings[a][i]))) for i, (l, m) in enumerate(color)))
        return cls(mu.L, tuple(colors))

    @property
    def n(self) -> int:
        return len(self.colors)

    def content(self) -> SolitonContent:
        return SolitonContent(self.L, tuple(tuple((l, len(rs)) for l, rs in c) for c in self.colors))

    def strings(self) -> list[tuple[int, int, int]]:
        return [(a, l, r) for a, c in enumerate(self.colors, start=1) for l, rs in c for r in rs]

    def rigging_vector(self) -> list[int]:
        """Riggings in string order ``(a, i, alpha)``."""
        return [r for c in self.colors for _, rs in c for r in rs]

    def block_riggings(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return {(a, i): rs for a, c in enumerate(self.colors, start=1)
                for i, (_, rs) in enumerate(c, start=1)}

    def validate(self) -> None:
        mu = self.content()
        for a, c in enumerate(self.colors, start=1):
            lengths = [l for l, _ in c]
            if lengths != sorted(set(lengths), reverse=True) or any(not rs for _, rs in c):
                raise InvalidRiggedConfiguration(f"color {a}: blocks must have distinct decreasing lengths")
            for l, rs in c:
                p = mu.vacancy(a, l)
                if list(rs) != sorted(rs):
                    raise InvalidRiggedConfiguration(f"color {a} length {l}: riggings not sorted")
                if rs[0] < 0 or rs[-1] > p:
                    raise InvalidRiggedConfiguration(
                        f"color {a} length {l}: riggings {rs} outside [0, {p}]")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvalidRiggedConfiguration:
            return False
        return True

    def to_json_obj(self) -> dict:
        return {"L": self.L, "colors": [
            {"blocks": [{"length": l, "riggings": list(rs)} for l, rs in c]} for c in self.colors]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RiggedConfiguration":
        try:
            L = int(obj["L"])
            colors = []
            for c in obj["colors"]:
                blocks = [(int(b["length"]), tuple(sorted(int(x) for x in b["riggings"]))) for b in c["blocks"]]
                blocks.sort(key=lambda t: -t[0])
                colors.append(tuple(blocks))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidRiggedConfiguration(f"malformed rigged configuration JSON: {exc}") from exc
        return cls(L, tuple(colors))

    @classmethod
    def from_json(cls, text: str) -> "RiggedConfiguration":
        return cls.from_json_obj(json.loads(text))


class _StringState:
    """Mutable multiset of strings used while running the KKR algorithms."""

    def __init__(self, n: int, L: int, strings=()):
        self.n = n
        self.L = L
        self.strings: list[list[list[int]]] = [[] for _ in range(n)]
        for a, length, rig in strings:
            self.strings[a - 1].append([length, rig])

    def _q(self, b: int, ell: int) -> int:
        return sum(min(ell, s[0]) for s in self.strings[b - 1])

    def vacancy(self, a: int, ell: int) -> int:
        total = self.L if a == 1 else 0
        for b in (a - 1, a, a + 1):
            if 1 <= b <= self.n:
                total -= cartan(a, b) * self._q(b, ell)
        return total

    def singular(self, a: int) -> list[int]:
        cache: dict[int, int] = {}
        out = []
        for idx, (length, rig) in enumerate(self.strings[a - 1]):
            if length not in cache:
                cache[length] = self.vacancy(a, length)
            if rig == cache[length]:
                out.append(idx)
        return out

    def pick(self, a: int, candidates: list[int], largest: bool, tie_break) -> int:
        """Choose among singular strings; ``tie_break`` is "first", "last" or a chooser
        called with the tied indices, used to explore every branch."""
        ss = self.strings[a - 1]
        key = (lambda i: (ss[i][0], ss[i][1])) if largest else (lambda i: (-ss[i][0], ss[i][1]))
        ordered = sorted(candidates, key=key)
        best_len = ss[ordered[-1]][0]
        tied = [i for i in ordered if ss[i][0] == best_len]
        if callable(tie_break):
            return tie_break(tied)
        return tied[-1] if tie_break == "last" else tied[0]

    def export(self) -> list[tuple[int, int, int]]:
        return [(a, s[0], s[1]) for a in range(1, self.n + 1) for s in self.strings[a - 1]]


def kkr_forward(p: Sequence[int], n: int, tie_break="last") -> RiggedConfiguration:
    """The KKR map from a highest path to its rigged configuration."""
    if not is_highest(p, n):
        raise NotHighest(f"{format_path(p)} is not a highest path")
    st = _StringState(n, 0)
    for d in p:
        changed: list[tuple[int, int]] = []
        if d >= 2:
            bound = None
            for c in range(d - 1, 0, -1):
                cands = []
                if bound != 0:
                    cands = [i for i in st.singular(c) if bound is None or st.strings[c - 1][i][0] <= bound]
                if cands:
                    idx = st.pick(c, cands, largest=True, tie_break=tie_break)
                    bound = st.strings[c - 1][idx][0]
                    st.strings[c - 1][idx][0] += 1
                else:
                    bound = 0
                    st.strings[c - 1].append([1, 0])
                    idx = len(st.strings[c - 1]) - 1
                changed.append((c, idx))
        st.L += 1
        for c, idx in changed:
            s = st.strings[c - 1][idx]
            s[1] = st.vacancy(c, s[0])
    return RiggedConfiguration.from_strings(len(p), n, st.export())


def kkr_backward(rc: RiggedConfiguration, tie_break="last") -> tuple[int, ...]:
    """The inverse KKR map; letters are produced right to left."""
    rc.validate()
    n = rc.n
    st = _StringState(n, rc.L, rc.strings())
    letters = []
    for _ in range(rc.L):
        bound = 1
        d = n + 1
        chosen: list[tuple[int, int]] = []
        for c in range(1, n + 1):
            cands = [i for i in st.singular(c) if st.strings[c - 1][i][0] >= bound]
            if not cands:
                d = c
                break
            idx = st.pick(c, cands, largest=False, tie_break=tie_break)
            bound = st.strings[c - 1][idx][0]
            chosen.append((c, idx))
        for c, idx in chosen:
            st.strings[c - 1][idx][0] -= 1
        st.L -= 1
        for c, idx in chosen:
            s = st.strings[c - 1][idx]
            if s[0] > 0:
                s[1] = st.vacancy(c, s[0])
        for c, _ in chosen:
            st.strings[c - 1] = [s for s in st.strings[c - 1] if s[0] > 0]
        letters.append(d)
    if any(st.strings[a] for a in range(n)):
        raise InvalidRiggedConfiguration("strings remain after the path is exhausted")
    return tuple(reversed(letters))


def enumerate_riggings(mu: SolitonContent) -> list[RiggedConfiguration]:
    """Every valid rigged configuration with content ``mu`` (empty if ``mu`` has p < 0)."""
    vac = mu.vacancy_numbers()
    if any(p < 0 for p in vac.values()):
        return []
    keys = mu.block_keys()
    choices = [list(combinations_with_replacement(range(vac[k] + 1), mu.mult(*k))) for k in keys]
    out = []
    for pick in product(*choices):
        riggings = [[() for _ in mu.blocks[a]] for a in range(mu.n)]
        for (a, i), rs in zip(keys, pick):
            riggings[a - 1][i - 1] = rs
        out.append(RiggedConfiguration.from_content(mu, riggings))
    return out


def count_riggings(mu: SolitonContent) -> int:
    from math import comb
    vac = mu.vacancy_numbers()
    if any(p < 0 for p in vac.values()):
        return 0
    total = 1
    for k in mu.block_keys():
        total *= comb(vac[k] + mu.mult(*k), mu.mult(*k))
    return total


def concatenate(rc1: RiggedConfiguration, rc2: RiggedConfiguration) -> RiggedConfiguration:
    """Rigged configuration predicted for the concatenated highest path."""
    mu1 = rc1.content()
    strings = rc1.strings() + [(a, l, r + mu1.vacancy(a, l)) for a, l, r in rc2.strings()]
    return RiggedConfiguration.from_strings(rc1.L + rc2.L, rc1.n, strings)
