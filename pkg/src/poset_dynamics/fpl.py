"""Fully-packed loop configurations on the n x n grid of dots.

Dots are addressed ``(r, c)`` with ``1 <= r, c <= n`` from the top-left.
``h_edges[r-1][c-1]`` joins dots (r, c) and (r, c+1); ``v_edges[r-1][c-1]``
joins (r, c) and (r+1, c). Square (i, j), ``1 <= i, j <= n-1``, has corners
(i, j) and (i+1, j+1) and encloses height entry h[i][j].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .asm import AsmPoset, Matrix, enumerate_height_functions, height_to_ideal, ideal_to_height, validate_height
from .linkpatterns import LinkPattern

Grid = tuple[tuple[int, ...], ...]


class FplError(ValueError):
    pass


@dataclass(frozen=True)
class FplGrid:
    n: int
    h_edges: Grid
    v_edges: Grid

    def to_json(self) -> dict:
        return {"n": self.n, "h_edges": [list(r) for r in self.h_edges], "v_edges": [list(r) for r in self.v_edges]}

    @classmethod
    def from_json(cls, data: dict) -> FplGrid:
        try:
            F = cls(int(data["n"]), _freeze(data["h_edges"]), _freeze(data["v_edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FplError(f"malformed FPL JSON: {exc}") from None
        validate_fpl(F)
        return F

    def __str__(self):
        return render(self)


def _freeze(rows: Sequence[Sequence[int]]) -> Grid:
    return tuple(tuple(int(bool(x)) for x in row) for row in rows)


def external_edges(n: int) -> list[tuple[tuple[int, int], str]]:
    """External edges as ``(dot, direction)``, numbered clockwise from the top-left dot's upward edge."""
    top = [((1, c), "N") for c in range(1, n + 1) if c % 2 == 1]
    right = [((r, n), "E") for r in range(1, n + 1) if (n - r + 1) % 2 == 0]
    bottom = [((n, c), "S") for c in range(n, 0, -1) if (n - c) % 2 == 0]
    left = [((r, 1), "W") for r in range(n, 0, -1) if r % 2 == 0]
    return top + right + bottom + left


def _neighbours(F: FplGrid) -> dict[tuple[int, int], list]:
    n = F.n
    adj = {(r, c): [] for r in range(1, n + 1) for c in range(1, n + 1)}
    for r in range(1, n + 1):
        for c in range(1, n):
            if F.h_edges[r - 1][c - 1]:
                adj[(r, c)].append((r, c + 1))
                adj[(r, c + 1)].append((r, c))
    for r in range(1, n):
        for c in range(1, n + 1):
            if F.v_edges[r - 1][c - 1]:
                adj[(r, c)].append((r + 1, c))
                adj[(r + 1, c)].append((r, c))
    for k, (dot, _) in enumerate(external_edges(n), start=1):
        adj[dot].append(k)
    return adj


def validate_fpl(F: FplGrid) -> None:
    n = F.n
    if n < 1:
        raise FplError("FPL order must be >= 1")
    if len(F.h_edges) != n or any(len(r) != n - 1 for r in F.h_edges):
        raise FplError(f"h_edges must be {n} x {n - 1}")
    if len(F.v_edges) != n - 1 or any(len(r) != n for r in F.v_edges):
        raise FplError(f"v_edges must be {n - 1} x {n}")
    for dot, nb in _neighbours(F).items():
        if len(nb) != 2:
            raise FplError(f"dot {dot} has degree {len(nb)}")


def height_to_fpl(h: Sequence[Sequence[int]]) -> FplGrid:
    check = validate_height(h)
    if not check:
        raise FplError(f"invalid height function: {check.witness}")
    n = len(h) - 1
    # an edge separates vertical neighbours {2k-1, 2k} and horizontal neighbours {2k, 2k+1}
    h_edges = [[int(max(h[r - 1][c], h[r][c]) % 2 == 0) for c in range(1, n)] for r in range(1, n + 1)]
    v_edges = [[int(min(h[r][c - 1], h[r][c]) % 2 == 0) for c in range(1, n + 1)] for r in range(1, n)]
    return FplGrid(n, _freeze(h_edges), _freeze(v_edges))


def fpl_to_height(F: FplGrid) -> Matrix:
    validate_fpl(F)
    n = F.n
    h = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        h[0][k] = h[k][0] = k
        h[n][k] = h[k][n] = n - k
    for r in range(1, n):
        for c in range(1, n):
            a = h[r][c - 1]
            # of a-1 and a+1 exactly one pairs with a to an even minimum
            edge = F.v_edges[r - 1][c - 1]
            h[r][c] = a + 1 if bool(edge) == (a % 2 == 0) else a - 1
    out = tuple(tuple(row) for row in h)
    if not validate_height(out) or height_to_fpl(out) != F:
        raise FplError("edge set is not the image of a height function")
    return out


def squares(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n) for j in range(1, n)]


def _sides(F: FplGrid, i: int, j: int) -> tuple[int, int, int, int]:
    """(top, bottom, left, right) edges of square (i, j)."""
    return F.h_edges[i - 1][j - 1], F.h_edges[i][j - 1], F.v_edges[i - 1][j - 1], F.v_edges[i - 1][j]


def _check_square(n: int, i: int, j: int) -> None:
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1):
        raise FplError(f"square ({i},{j}) outside 1..{n - 1}")


def n_alpha(F: FplGrid, i: int, j: int) -> int:
    """-1 for a top/bottom pair around square (i, j), +1 for left/right, else 0."""
    _check_square(F.n, i, j)
    sides = _sides(F, i, j)
    if sides == (1, 1, 0, 0):
        return -1
    if sides == (0, 0, 1, 1):
        return 1
    return 0


def _local_move(h: list[list[int]], v: list[list[int]], i: int, j: int) -> bool:
    sides = (h[i - 1][j - 1], h[i][j - 1], v[i - 1][j - 1], v[i - 1][j])
    if sides == (1, 1, 0, 0) or sides == (0, 0, 1, 1):
        flip = 1 - sides[0]
        h[i - 1][j - 1] = h[i][j - 1] = flip
        v[i - 1][j - 1] = v[i - 1][j] = 1 - flip
        return True
    return False


def local_move(F: FplGrid, i: int, j: int) -> FplGrid:
    """Swap a parallel pair of edges around square (i, j); otherwise no change."""
    _check_square(F.n, i, j)
    h = [list(r) for r in F.h_edges]
    v = [list(r) for r in F.v_edges]
    if not _local_move(h, v, i, j):
        return F
    return FplGrid(F.n, _freeze(h), _freeze(v))


def gyration_classes(n: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Squares visited first (i + j = n mod 2) and second."""
    first = [(i, j) for i, j in squares(n) if (i + j - n) % 2 == 0]
    second = [(i, j) for i, j in squares(n) if (i + j - n) % 2 == 1]
    return first, second


def fpl_gyration(F: FplGrid) -> FplGrid:
    h = [list(r) for r in F.h_edges]
    v = [list(r) for r in F.v_edges]
    for cls in gyration_classes(F.n):
        for i, j in cls:
            _local_move(h, v, i, j)
    return FplGrid(F.n, _freeze(h), _freeze(v))


def link_pattern(F: FplGrid) -> LinkPattern:
    """Match external edges by following the paths of ``F``."""
    adj = _neighbours(F)
    size = 2 * F.n
    ext = external_edges(F.n)
    partner = [0] * (size + 1)
    for k in range(1, size + 1):
        if partner[k]:
            continue
        prev, cur = k, ext[k - 1][0]
        for _ in range(F.n * F.n + 1):
            nb = adj[cur]
            if len(nb) != 2:
                raise FplError(f"dot {cur} has degree {len(nb)}")
            nxt = nb[1] if nb[0] == prev else nb[0]
            if isinstance(nxt, int):
                partner[k], partner[nxt] = nxt, k
                break
            prev, cur = cur, nxt
        else:
            raise FplError(f"path from external edge {k} does not terminate")
    return LinkPattern.from_partners(partner)


def enumerate_fpls(n: int) -> Iterator[FplGrid]:
    for h in enumerate_height_functions(n):
        yield height_to_fpl(h)


def ideal_to_fpl(A: AsmPoset, ideal: int) -> FplGrid:
    return height_to_fpl(ideal_to_height(A, ideal))


def fpl_to_ideal(A: AsmPoset, F: FplGrid) -> int:
    return height_to_ideal(A, fpl_to_height(F))


_BOX = {
    frozenset("NS"): "│", frozenset("EW"): "─", frozenset("NE"): "└", frozenset("NW"): "┘",
    frozenset("SE"): "┌", frozenset("SW"): "┐",
}


def render(F: FplGrid) -> str:
    """Box-drawing picture of ``F`` (diagnostic only)."""
    n = F.n
    rows, cols = 2 * n + 1, 4 * n + 1
    canvas = [[" "] * cols for _ in range(rows)]
    dirs = {(r, c): set() for r in range(1, n + 1) for c in range(1, n + 1)}
    for r in range(1, n + 1):
        for c in range(1, n):
            if F.h_edges[r - 1][c - 1]:
                dirs[(r, c)].add("E")
                dirs[(r, c + 1)].add("W")
                for x in range(4 * c - 1, 4 * c + 2):
                    canvas[2 * r - 1][x] = "─"
    for r in range(1, n):
        for c in range(1, n + 1):
            if F.v_edges[r - 1][c - 1]:
                dirs[(r, c)].add("S")
                dirs[(r + 1, c)].add("N")
                canvas[2 * r][4 * c - 2] = "│"
    for (r, c), d in external_edges(n):
        dirs[(r, c)].add(d)
        if d == "N":
            canvas[0][4 * c - 2] = "│"
        elif d == "S":
            canvas[2 * n][4 * c - 2] = "│"
        elif d == "W":
            canvas[2 * r - 1][0] = canvas[2 * r - 1][1] = "─"
        else:
            canvas[2 * r - 1][cols - 1] = canvas[2 * r - 1][cols - 2] = "─"
    for (r, c), d in dirs.items():
        canvas[2 * r - 1][4 * c - 2] = _BOX.get(frozenset(d), "•")
    return "\n".join("".join(row).rstrip() for row in canvas)
