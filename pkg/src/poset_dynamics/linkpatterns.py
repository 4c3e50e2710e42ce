"""Noncrossing perfect matchings on 2n points, rotation and Temperley-Lieb generators."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable


class LinkPatternError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LinkPattern:
    """A noncrossing perfect matching of ``1..2n``; pairs are sorted with a < b."""

    n: int
    pairs: tuple[tuple[int, int], ...]
    partner: tuple[int, ...] = field(compare=False, repr=False, default=())

    def __post_init__(self):
        size = 2 * self.n
        partner = [0] * (size + 1)
        for a, b in self.pairs:
            if not (1 <= a < b <= size) or partner[a] or partner[b]:
                raise LinkPatternError(f"{self.pairs} is not a perfect matching of 1..{size}")
            partner[a], partner[b] = b, a
        if len(self.pairs) != self.n:
            raise LinkPatternError(f"{self.pairs} is not a perfect matching of 1..{size}")
        for a, b in self.pairs:
            for c, d in self.pairs:
                if a < c < b < d:
                    raise LinkPatternError(f"pairs ({a},{b}) and ({c},{d}) cross")
        object.__setattr__(self, "partner", tuple(partner))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> LinkPattern:
        norm = tuple(sorted(tuple(sorted(p)) for p in pairs))
        return cls(len(norm), norm)

    @classmethod
    def from_partners(cls, partner: list[int]) -> LinkPattern:
        """Build from a 1-indexed partner list (entry 0 ignored)."""
        return cls.from_pairs((a, b) for a, b in enumerate(partner) if a and a < b)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]

    def __str__(self):
        return " ".join(f"({a},{b})" for a, b in self.pairs)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def _matchings(lo: int, hi: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if lo > hi:
        return ((),)
    out = []
    for mate in range(lo + 1, hi + 1, 2):
        for inside in _matchings(lo + 1, mate - 1):
            for outside in _matchings(mate + 1, hi):
                out.append(((lo, mate),) + inside + outside)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_link_patterns(n: int) -> tuple[LinkPattern, ...]:
    """All Cat(n) link patterns, sorted lexicographically by pair list."""
    return tuple(sorted(LinkPattern.from_pairs(m) for m in _matchings(1, 2 * n)))


def rotate(pi: LinkPattern, steps: int = 1) -> LinkPattern:
    """Relabel point i as i - steps (mod 2n, into 1..2n)."""
    size = 2 * pi.n
    return LinkPattern.from_pairs(
        ((a - 1 - steps) % size + 1, (b - 1 - steps) % size + 1) for a, b in pi.pairs
    )


def tl_apply(j: int, pi: LinkPattern) -> LinkPattern:
    """Temperley-Lieb generator e_j: join j and j+1 (mod 2n), joining their old partners."""
    size = 2 * pi.n
    if not 1 <= j <= size:
        raise LinkPatternError(f"e_{j} undefined for 2n = {size}")
    k = j % size + 1
    if pi.partner[j] == k:
        return pi
    partner = list(pi.partner)
    a, b = partner[j], partner[k]
    partner[j], partner[k] = k, j
    partner[a], partner[b] = b, a
    return LinkPattern.from_partners(partner)
