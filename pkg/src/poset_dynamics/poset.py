"""Finite posets, order ideals and antichains.

Elements are the integers ``0..m-1``. Order ideals and antichains are stored
as Python ``int`` bit-sets (bit ``p`` set iff element ``p`` is a member), so
there is no hard cap on the poset size; the dense representation is simply
cheapest below 64 elements.
"""

from __future__ import annotations

import heapq
import json
import random
from collections import deque
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class PosetError(ValueError):
    """Invalid poset data or an argument that is not an ideal/antichain."""


class CycleError(PosetError):
    def __init__(self, cycle: list[int]):
        self.cycle = cycle
        super().__init__(f"cover relations contain a cycle: {' < '.join(map(str, cycle))}")


class NotRankedError(PosetError):
    def __init__(self, chain: list[int], cover: tuple[int, int]):
        self.chain = chain
        self.cover = cover
        super().__init__(
            f"poset is not ranked: cover {cover[0]} < {cover[1]} closes the "
            f"inconsistent cover path {chain}"
        )


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for p in elements:
        mask |= 1 << p
    return mask


class Poset:
    """An immutable finite poset on ``range(size)``.

    ``covers`` holds the transitive reduction of the relations passed in.
    ``labels`` is an optional tuple of hashable labels (integer triples for
    the ASM poset).
    """

    def __init__(self, size: int, covers: Iterable[tuple[int, int]], labels: Sequence | None = None):
        if size < 0:
            raise PosetError("element count must be non-negative")
        pairs = set()
        for lo, hi in covers:
            lo, hi = int(lo), int(hi)
            if not (0 <= lo < size and 0 <= hi < size):
                raise PosetError(f"relation ({lo}, {hi}) has an index outside 0..{size - 1}")
            pairs.add((lo, hi))
        if labels is not None:
            labels = tuple(tuple(x) if isinstance(x, list) else x for x in labels)
            if len(labels) != size:
                raise PosetError(f"got {len(labels)} labels for {size} elements")
        self.size = size
        self.labels = labels

        order = _topological_order(size, pairs)
        below = [[] for _ in range(size)]
        for lo, hi in pairs:
            below[hi].append(lo)
        down = [0] * size
        for v in order:
            m = 1 << v
            for u in below[v]:
                m |= down[u]
            down[v] = m
        reduced = set()
        for lo, hi in pairs:
            if not any(w != lo and down[w] >> lo & 1 for w in below[hi]):
                reduced.add((lo, hi))

        self.covers = frozenset(reduced)
        self._down = tuple(down)
        lower = [0] * size
        upper = [0] * size
        for lo, hi in reduced:
            lower[hi] |= 1 << lo
            upper[lo] |= 1 << hi
        self._lower_covers = tuple(lower)
        self._upper_covers = tuple(upper)
        self.full = (1 << size) - 1

    def __repr__(self):
        return f"Poset({self.size}, {sorted(self.covers)})"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.size == other.size and self.covers == other.covers and self.labels == other.labels

    def __hash__(self):
        return hash((self.size, self.covers, self.labels))

    def __len__(self):
        return self.size

    # relations

    def leq(self, q: int, p: int) -> bool:
        return bool(self._down[p] >> q & 1)

    def down_set(self, p: int) -> int:
        return self._down[p]

    @cached_property
    def _up(self) -> tuple[int, ...]:
        up = [0] * self.size
        for p in range(self.size):
            for q in bits(self._down[p]):
                up[q] |= 1 << p
        return tuple(up)

    def up_set(self, p: int) -> int:
        return self._up[p]

    def lower_covers(self, p: int) -> int:
        return self._lower_covers[p]

    def upper_covers(self, p: int) -> int:
        return self._upper_covers[p]

    def comparable(self, p: int, q: int) -> bool:
        return self.leq(p, q) or self.leq(q, p)

    def index_of(self, label) -> int:
        if self.labels is None:
            raise PosetError("poset has no labels")
        try:
            return self._label_index[tuple(label) if isinstance(label, list) else label]
        except KeyError:
            raise PosetError(f"no element labelled {label!r}") from None

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Smallest-index-first topological order of the elements."""
        return tuple(_topological_order(self.size, self.covers))

    # ideals and antichains

    def is_ideal(self, mask: int) -> bool:
        return all(self._down[p] & ~mask == 0 for p in bits(mask))

    def is_antichain(self, mask: int) -> bool:
        return all(self._down[p] & mask == 1 << p for p in bits(mask))

    def _check_ideal(self, ideal: int) -> None:
        if ideal < 0 or ideal >> self.size or not self.is_ideal(ideal):
            raise PosetError(f"{sorted(bits(ideal))} is not an order ideal")

    def ideal_max(self, ideal: int) -> int:
        """Maximal elements of ``ideal``."""
        self._check_ideal(ideal)
        return to_mask(p for p in bits(ideal) if self._upper_covers[p] & ideal == 0)

    def complement_min(self, ideal: int) -> int:
        """Minimal elements of the complement of ``ideal``."""
        self._check_ideal(ideal)
        rest = self.full & ~ideal
        return to_mask(p for p in bits(rest) if self._lower_covers[p] & rest == 0)

    def ideal_generated_by(self, antichain: int) -> int:
        if antichain < 0 or antichain >> self.size or not self.is_antichain(antichain):
            raise PosetError(f"{sorted(bits(antichain))} is not an antichain")
        ideal = 0
        for p in bits(antichain):
            ideal |= self._down[p]
        return ideal

    def enumerate_ideals(self) -> list[int]:
        """All order ideals, sorted by bit-set value (bit 0 least significant)."""
        return list(self._ideals)

    @cached_property
    def _ideals(self) -> tuple[int, ...]:
        order = self.linear_extension
        lower = self._lower_covers
        out = []
        # include p only when its lower covers are present; exclusion is always legal
        stack = [(0, 0)]
        while stack:
            pos, ideal = stack.pop()
            if pos == len(order):
                out.append(ideal)
                continue
            p = order[pos]
            stack.append((pos + 1, ideal))
            if lower[p] & ~ideal == 0:
                stack.append((pos + 1, ideal | 1 << p))
        out.sort()
        return tuple(out)

    def rank_function(self) -> tuple[int, ...]:
        """Rank of each element, with the lowest rank of each component at 0.

        Raises :class:`NotRankedError` if no assignment makes every cover
        raise the rank by exactly one.
        """
        return self._rank

    @cached_property
    def _rank(self) -> tuple[int, ...]:
        adj = [[] for _ in range(self.size)]
        for lo, hi in sorted(self.covers):
            adj[lo].append((hi, 1))
            adj[hi].append((lo, -1))
        rank: list[int | None] = [None] * self.size
        parent: list[int | None] = [None] * self.size
        for root in range(self.size):
            if rank[root] is not None:
                continue
            rank[root] = 0
            component = [root]
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for v, step in adj[u]:
                    if rank[v] is None:
                        rank[v] = rank[u] + step
                        parent[v] = u
                        component.append(v)
                        queue.append(v)
                    elif rank[v] != rank[u] + step:
                        lo, hi = (u, v) if step == 1 else (v, u)
                        raise NotRankedError(_tree_path(parent, u, v), (lo, hi))
            low = min(rank[v] for v in component)
            for v in component:
                rank[v] -= low
        return tuple(rank)

    def is_ranked(self) -> bool:
        try:
            self.rank_function()
        except NotRankedError:
            return False
        return True

    def dual(self) -> Poset:
        return Poset(self.size, [(hi, lo) for lo, hi in self.covers], self.labels)

    # serialization

    def to_json(self) -> dict:
        data = {"n": self.size, "covers": [list(c) for c in sorted(self.covers)]}
        if self.labels is not None:
            data["labels"] = [list(lab) if isinstance(lab, tuple) else lab for lab in self.labels]
        return data

    @classmethod
    def from_json(cls, data: dict | str) -> Poset:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(int(data["n"]), [tuple(c) for c in data["covers"]], data.get("labels"))
        except (KeyError, TypeError) as exc:
            raise PosetError(f"malformed poset JSON: {exc}") from None


def poset_from_covers(size: int, covers: Iterable[tuple[int, int]], labels: Sequence | None = None) -> Poset:
    return Poset(size, covers, labels)


def _topological_order(size: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    succ = [[] for _ in range(size)]
    indeg = [0] * size
    for lo, hi in pairs:
        succ[lo].append(hi)
        indeg[hi] += 1
    heap = [v for v in range(size) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(order) < size:
        raise CycleError(_find_cycle(succ, set(range(size)) - set(order)))
    return order


def _find_cycle(succ: list[list[int]], stuck: set[int]) -> list[int]:
    # every vertex left over by Kahn's algorithm has a leftover predecessor
    pred = {v: [] for v in stuck}
    for u in stuck:
        for w in succ[u]:
            if w in stuck:
                pred[w].append(u)
    seen = {}
    walk = []
    v = min(stuck)
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = min(pred[v])
    cycle = walk[seen[v]:][::-1]
    return cycle + [cycle[0]]


def _tree_path(parent: list[int | None], u: int, v: int) -> list[int]:
    def to_root(x):
        out = [x]
        while parent[x] is not None:
            x = parent[x]
            out.append(x)
        return out

    pu, pv = to_root(u), to_root(v)
    common = set(pu) & set(pv)
    head = [x for x in pu if x not in common]
    meet = next(x for x in pu if x in common)
    tail = [x for x in pv if x not in common]
    return head + [meet] + tail[::-1]


# families

def chain(length: int) -> Poset:
    return Poset(length, [(i, i + 1) for i in range(length - 1)])


def antichain(size: int) -> Poset:
    return Poset(size, [])


def chain_product(a: int, b: int) -> Poset:
    """The product of chains [a] x [b]; element ``(x, y)`` has index ``x*b + y``."""
    covers = []
    for x in range(a):
        for y in range(b):
            if x + 1 < a:
                covers.append((x * b + y, (x + 1) * b + y))
            if y + 1 < b:
                covers.append((x * b + y, x * b + y + 1))
    return Poset(a * b, covers, [(x, y) for x in range(a) for y in range(b)])


def counterexample_poset() -> Poset:
    """Three elements a, b < c (indices 0, 1, 2)."""
    return Poset(3, [(0, 2), (1, 2)], ["a", "b", "c"])


def random_poset(rng: random.Random, size: int, density: float = 0.3) -> Poset:
    """Random upper-triangular relation matrix, closed and reduced by the constructor."""
    rel = [(i, j) for i in range(size) for j in range(i + 1, size) if rng.random() < density]
    return Poset(size, rel)


def random_ranked_poset(rng: random.Random, size: int, levels: int | None = None, density: float = 0.5) -> Poset:
    """Random poset whose covers only join consecutive levels, hence ranked."""
    if levels is None:
        levels = rng.randint(2, max(2, size // 2))
    level = sorted(rng.randrange(levels) for _ in range(size))
    rel = [
        (i, j)
        for i in range(size)
        for j in range(i + 1, size)
        if level[j] == level[i] + 1 and rng.random() < density
    ]
    return Poset(size, rel)


def random_posets(count: int, seed: int, min_size: int = 4, max_size: int = 12, ranked: bool = False) -> list[Poset]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        size = rng.randint(min_size, max_size)
        if ranked:
            out.append(random_ranked_poset(rng, size))
        else:
            out.append(random_poset(rng, size, density=rng.uniform(0.1, 0.6)))
    return out
