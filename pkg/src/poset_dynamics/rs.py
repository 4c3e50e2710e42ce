"""FPL link-pattern distributions, the Razumov-Stroganov check and the O(1)
dense loop model on a semi-infinite cylinder.

All vectors and matrices hold :class:`fractions.Fraction` entries.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .fpl import enumerate_fpls, link_pattern
from .homomesy import fraction_str
from .linkpatterns import LinkPattern, enumerate_link_patterns, rotate, tl_apply


class ReducibleChainError(ValueError):
    """The transfer matrix has more than one stationary distribution."""


@dataclass(frozen=True)
class LinkVector:
    n: int
    coords: tuple[Fraction, ...]

    @property
    def order(self) -> tuple[LinkPattern, ...]:
        return enumerate_link_patterns(self.n)

    def __getitem__(self, pi: LinkPattern) -> Fraction:
        return self.coords[pattern_index(self.n)[pi]]

    def __add__(self, other: LinkVector) -> LinkVector:
        return LinkVector(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> LinkVector:
        return LinkVector(self.n, tuple(Fraction(c) * a for a in self.coords))

    def total(self) -> Fraction:
        return sum(self.coords, Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "order": [pi.to_json() for pi in self.order],
            "coords": [fraction_str(a) for a in self.coords],
        }


@lru_cache(maxsize=None)
def pattern_index(n: int) -> dict[LinkPattern, int]:
    return {pi: k for k, pi in enumerate(enumerate_link_patterns(n))}


@lru_cache(maxsize=None)
def s_vector(n: int) -> LinkVector:
    """Number of order-n FPLs with each link pattern."""
    counts = Counter(link_pattern(F) for F in enumerate_fpls(n))
    return LinkVector(n, tuple(Fraction(counts[pi]) for pi in enumerate_link_patterns(n)))


def hamiltonian_apply(v: LinkVector) -> LinkVector:
    """Push ``v`` forward under each of the 2n generators e_j and sum."""
    n = v.n
    index = pattern_index(n)
    out = [Fraction(0)] * len(v.coords)
    for pi, x in zip(v.order, v.coords):
        if not x:
            continue
        for j in range(1, 2 * n + 1):
            out[index[tl_apply(j, pi)]] += x
    return LinkVector(n, tuple(out))


@dataclass
class RsResult:
    n: int
    holds: bool
    residual: LinkVector
    # (pattern, FPL count, average over e_j of the preimage counts)
    rows: list[tuple[LinkPattern, Fraction, Fraction]]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "holds": self.holds,
            "residual": self.residual.to_json(),
            "per_pattern": [
                {"pattern": pi.to_json(), "fpl_count": fraction_str(s), "preimage_average": fraction_str(avg)}
                for pi, s, avg in self.rows
            ],
        }


def rs_check(n: int) -> RsResult:
    s = s_vector(n)
    hs = hamiltonian_apply(s)
    residual = LinkVector(n, tuple(a - 2 * n * b for a, b in zip(hs.coords, s.coords)))
    rows = [(pi, b, a / (2 * n)) for pi, a, b in zip(s.order, hs.coords, s.coords)]
    return RsResult(n, residual.is_zero(), residual, rows)


# dense loop model

def row_transfer(row: Sequence[str], pi: LinkPattern) -> LinkPattern:
    """Add one row of 2n plaquettes on top of ``pi`` and read off the new pattern.

    Plaquette x has edge midpoints W, N, S, E; its E is the W of plaquette
    x+1 (cyclically). Tile ``A`` joins W-N and S-E, tile ``B`` joins N-E and
    W-S. The S midpoints carry ``pi``; closed loops are dropped.
    """
    size = 2 * pi.n
    if len(row) != size:
        raise ValueError(f"row has {len(row)} tiles, expected {size}")
    # nodes: ("S", x), ("N", x), ("V", x) = boundary between plaquettes x and x+1
    adj: dict[tuple[str, int], list[tuple[str, int]]] = {}

    def join(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    for x in range(1, size + 1):
        left = ("V", (x - 2) % size + 1)
        right = ("V", x)
        if row[x - 1] == "A":
            join(("N", x), left)
            join(("S", x), right)
        elif row[x - 1] == "B":
            join(("N", x), right)
            join(("S", x), left)
        else:
            raise ValueError(f"unknown tile {row[x - 1]!r}")
    for a, b in pi.pairs:
        join(("S", a), ("S", b))

    partner = [0] * (size + 1)
    for x in range(1, size + 1):
        if partner[x]:
            continue
        prev, cur = None, ("N", x)
        while True:
            nb = adj[cur]
            nxt = nb[0] if len(nb) == 1 or nb[1] == prev else nb[1]
            if nxt[0] == "N":
                partner[x], partner[nxt[1]] = nxt[1], x
                break
            prev, cur = cur, nxt
    return LinkPattern.from_partners(partner)


@lru_cache(maxsize=None)
def _transitions(n: int) -> tuple[Counter, ...]:
    """For each pattern (canonical order), a Counter of (#A tiles, result index)."""
    index = pattern_index(n)
    out = []
    rows = list(product("AB", repeat=2 * n))
    for pi in enumerate_link_patterns(n):
        c = Counter()
        for row in rows:
            c[(row.count("A"), index[row_transfer(row, pi)])] += 1
        out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class TransferMatrix:
    """Column-stochastic: ``entries[k][l]`` is the probability of moving from pattern l to pattern k."""

    n: int
    p: Fraction
    entries: tuple[tuple[Fraction, ...], ...]

    def __matmul__(self, other: TransferMatrix) -> tuple[tuple[Fraction, ...], ...]:
        return matmul(self.entries, other.entries)

    def column_sums(self) -> list[Fraction]:
        size = len(self.entries)
        return [sum((self.entries[k][l] for k in range(size)), Fraction(0)) for l in range(size)]


def transfer_matrix(n: int, p) -> TransferMatrix:
    """Tiles ``A`` with probability ``p`` and ``B`` with probability 1 - p."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    size = len(enumerate_link_patterns(n))
    cells = 2 * n
    weight = [p**a * (1 - p) ** (cells - a) for a in range(cells + 1)]
    T = [[Fraction(0)] * size for _ in range(size)]
    for l, trans in enumerate(_transitions(n)):
        for (a, k), count in trans.items():
            T[k][l] += count * weight[a]
    return TransferMatrix(n, p, tuple(tuple(r) for r in T))


def matmul(X, Y):
    size, inner, cols = len(X), len(Y), len(Y[0])
    return tuple(
        tuple(sum((X[i][k] * Y[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)) for i in range(size)
    )


def solve_unique(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Exact Gaussian elimination for a consistent system with a unique solution.

    ``A`` may have more rows than columns. Raises ``ValueError`` if the
    system is inconsistent and :class:`ReducibleChainError` if the solution
    is not unique.
    """
    rows = [list(map(Fraction, r)) + [Fraction(x)] for r, x in zip(A, b)]
    cols = len(rows[0]) - 1
    pivot_row = 0
    pivots = []
    for c in range(cols):
        pr = next((r for r in range(pivot_row, len(rows)) if rows[r][c] != 0), None)
        if pr is None:
            continue
        rows[pivot_row], rows[pr] = rows[pr], rows[pivot_row]
        piv = rows[pivot_row][c]
        rows[pivot_row] = [x / piv for x in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pivot_row])]
        pivots.append(c)
        pivot_row += 1
    if any(all(x == 0 for x in r[:-1]) and r[-1] != 0 for r in rows):
        raise ValueError("inconsistent linear system")
    if len(pivots) < cols:
        raise ReducibleChainError(f"solution space has dimension {cols - len(pivots)}")
    return [rows[k][-1] for k in range(cols)]


def stationary_distribution(T: TransferMatrix) -> LinkVector:
    """Unique v with T v = v and coordinates summing to 1."""
    size = len(T.entries)
    A = [[T.entries[i][j] - (1 if i == j else 0) for j in range(size)] for i in range(size)]
    A.append([Fraction(1)] * size)
    b = [Fraction(0)] * size + [Fraction(1)]
    return LinkVector(T.n, tuple(solve_unique(A, b)))


def simulate_dlm(n: int, p, steps: int, seed: int, burn_in: int = 100) -> dict[LinkPattern, float]:
    """Monte Carlo link-pattern frequencies of the row-adding chain (cross-check only)."""
    rng = random.Random(seed)
    p = float(p)
    pi = enumerate_link_patterns(n)[0]
    counts = Counter()
    for step in range(burn_in + steps):
        row = ["A" if rng.random() < p else "B" for _ in range(2 * n)]
        pi = row_transfer(row, pi)
        if step >= burn_in:
            counts[pi] += 1
    return {q: counts[q] / steps for q in enumerate_link_patterns(n)}


def rotation_of_uniform_row(n: int, tile: str) -> int | None:
    """The k with row_transfer(tile*2n, pi) = rotate(pi, k) for every pi, if any."""
    row = tile * (2 * n)
    for k in (1, -1):
        if all(row_transfer(row, pi) == rotate(pi, k) for pi in enumerate_link_patterns(n)):
            return k
    return None
