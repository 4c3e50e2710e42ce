"""Toggles, rowmotion, gyration and orbit machinery on J(P)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from .poset import Poset, PosetError


class NotBijectiveError(RuntimeError):
    """An action failed to return to its starting ideal."""


def toggle(P: Poset, p: int, ideal: int) -> int:
    bit = 1 << p
    if ideal & bit:
        if P.upper_covers(p) & ideal == 0:
            return ideal ^ bit
    elif P.lower_covers(p) & ~ideal == 0:
        return ideal | bit
    return ideal


def apply_word(P: Poset, word: Sequence[int], ideal: int) -> int:
    """Apply the toggles of ``word`` left to right."""
    for p in word:
        if not 0 <= p < P.size:
            raise PosetError(f"toggle index {p} outside 0..{P.size - 1}")
        ideal = toggle(P, p, ideal)
    return ideal


def rowmotion_antichain(P: Poset, ideal: int) -> int:
    return P.ideal_generated_by(P.complement_min(ideal))


def rowmotion_word(P: Poset) -> tuple[int, ...]:
    return P.linear_extension[::-1]


def rowmotion_toggles(P: Poset, ideal: int) -> int:
    """Rowmotion as toggles from the top of a linear extension down."""
    return apply_word(P, rowmotion_word(P), ideal)


def gyration_word(P: Poset, rank: Sequence[int] | None = None) -> tuple[int, ...]:
    """Even-rank elements then odd-rank elements, each class in index order."""
    if rank is None:
        rank = P.rank_function()
    even = [p for p in range(P.size) if rank[p] % 2 == 0]
    odd = [p for p in range(P.size) if rank[p] % 2 == 1]
    return tuple(even + odd)


def gyration(P: Poset, ideal: int, rank: Sequence[int] | None = None) -> int:
    return apply_word(P, gyration_word(P, rank), ideal)


def gyration_inverse(P: Poset, ideal: int, rank: Sequence[int] | None = None) -> int:
    return apply_word(P, gyration_word(P, rank)[::-1], ideal)


@dataclass(frozen=True)
class Action:
    """A named bijection on J(P): ``row``, ``gyr``, ``gyr-inverse`` or ``word``."""

    kind: str
    word: tuple[int, ...] = ()

    KINDS = ("row", "row-toggles", "gyr", "gyr-inverse", "word")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown action {self.kind!r}; expected one of {', '.join(self.KINDS)}")

    @property
    def name(self) -> str:
        if self.kind == "word":
            return "word:" + ",".join(map(str, self.word))
        return self.kind

    @classmethod
    def parse(cls, text: str) -> Action:
        if text.startswith("word:"):
            body = text[5:]
            return cls("word", tuple(int(x) for x in body.split(",") if x.strip()))
        return cls(text)

    def bind(self, P: Poset) -> Callable[[int], int]:
        if self.kind == "row":
            return lambda ideal: rowmotion_antichain(P, ideal)
        if self.kind == "row-toggles":
            w = rowmotion_word(P)
        elif self.kind == "gyr":
            w = gyration_word(P)
        elif self.kind == "gyr-inverse":
            w = gyration_word(P)[::-1]
        else:
            w = self.word
            apply_word(P, w, 0)  # validates indices
        return lambda ideal: apply_word(P, w, ideal)


ROW = Action("row")
GYR = Action("gyr")
GYR_INVERSE = Action("gyr-inverse")


@dataclass(frozen=True)
class Orbit:
    """A cycle of an action, rotated so the least ideal comes first."""

    action: str
    ideals: tuple[int, ...]

    def __len__(self):
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)


def _as_callable(action, P: Poset) -> tuple[str, Callable[[int], int]]:
    if isinstance(action, str):
        action = Action.parse(action)
    if isinstance(action, Action):
        return action.name, action.bind(P)
    return getattr(action, "__name__", "custom"), action


def orbit(action, P: Poset, ideal: int, limit: int | None = None) -> Orbit:
    name, step = _as_callable(action, P)
    if limit is None:
        limit = len(P.enumerate_ideals())
    cycle = [ideal]
    seen = {ideal}
    current = step(ideal)
    while current != ideal:
        if current in seen or len(cycle) >= limit:
            raise NotBijectiveError(f"action {name} does not return to {ideal} within {limit} steps")
        seen.add(current)
        cycle.append(current)
        current = step(current)
    k = cycle.index(min(cycle))
    return Orbit(name, tuple(cycle[k:] + cycle[:k]))


def orbit_decomposition(action, P: Poset) -> list[Orbit]:
    """Partition J(P) into orbits, ordered by their least ideal."""
    name, step = _as_callable(action, P)
    ideals = P.enumerate_ideals()
    visited = set()
    out = []
    for ideal in ideals:
        if ideal in visited:
            continue
        o = orbit(step, P, ideal, limit=len(ideals))
        out.append(Orbit(name, o.ideals))
        visited.update(o.ideals)
    return out


def orbit_sizes(orbits: Sequence[Orbit]) -> Counter:
    return Counter(len(o) for o in orbits)


def orbit_multiset_equal(d1: Sequence[Orbit], d2: Sequence[Orbit]) -> bool:
    return orbit_sizes(d1) == orbit_sizes(d2)


def orbits_to_json(orbits: Sequence[Orbit]) -> dict:
    return {
        "action": orbits[0].action if orbits else None,
        "orbits": [list(o.ideals) for o in orbits],
    }
