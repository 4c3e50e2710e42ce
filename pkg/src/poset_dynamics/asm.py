"""Alternating sign matrices, height functions, corner sums and the poset A_n.

ASMs are n x n and indexed from 1 in the maths (``a[i-1][j-1]`` in code);
height functions are (n+1) x (n+1) and indexed from 0. Both are stored as
tuples of row tuples.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Sequence

from .poset import Poset, bits, to_mask

Matrix = tuple[tuple[int, ...], ...]


class AsmError(ValueError):
    pass


class AsmCheck(NamedTuple):
    valid: bool
    witness: str | None = None

    def __bool__(self):
        return self.valid


def _freeze(M: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in M)


def validate_asm(M: Sequence[Sequence[int]]) -> AsmCheck:
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        return AsmCheck(False, "matrix is not square and non-empty")
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            if x not in (-1, 0, 1):
                return AsmCheck(False, f"entry ({i + 1},{j + 1}) = {x} not in {{-1,0,1}}")
    lines = [(f"row {i + 1}", list(M[i])) for i in range(n)]
    lines += [(f"column {j + 1}", [M[i][j] for i in range(n)]) for j in range(n)]
    for name, line in lines:
        partial = 0
        for x in line:
            partial += x
            if partial not in (0, 1):
                return AsmCheck(False, f"{name}: nonzero entries do not alternate starting with +1")
        if partial != 1:
            return AsmCheck(False, f"{name} sums to {partial}")
    return AsmCheck(True)


def validate_height(h: Sequence[Sequence[int]]) -> AsmCheck:
    n = len(h) - 1
    if n < 1 or any(len(row) != n + 1 for row in h):
        return AsmCheck(False, "height function must be (n+1) x (n+1) with n >= 1")
    for k in range(n + 1):
        for (i, j), want in (((0, k), k), ((k, 0), k), ((n, k), n - k), ((k, n), n - k)):
            if h[i][j] != want:
                return AsmCheck(False, f"boundary entry h[{i}][{j}] = {h[i][j]}, expected {want}")
    for i in range(n + 1):
        for j in range(n + 1):
            if j < n and abs(h[i][j] - h[i][j + 1]) != 1:
                return AsmCheck(False, f"h[{i}][{j}] and h[{i}][{j + 1}] differ by {h[i][j + 1] - h[i][j]}")
            if i < n and abs(h[i][j] - h[i + 1][j]) != 1:
                return AsmCheck(False, f"h[{i}][{j}] and h[{i + 1}][{j}] differ by {h[i + 1][j] - h[i][j]}")
    return AsmCheck(True)


def _require(check: AsmCheck, what: str) -> None:
    if not check.valid:
        raise AsmError(f"invalid {what}: {check.witness}")


def corner_sum(M: Sequence[Sequence[int]]) -> Matrix:
    """c[i-1][j-1] = sum of a over rows <= i and columns <= j."""
    _require(validate_asm(M), "ASM")
    n = len(M)
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        run = 0
        for j in range(n):
            run += M[i][j]
            c[i][j] = run + (c[i - 1][j] if i else 0)
    return _freeze(c)


def asm_from_corner_sum(c: Sequence[Sequence[int]]) -> Matrix:
    n = len(c)

    def at(i, j):
        return c[i - 1][j - 1] if i and j else 0

    M = _freeze(
        [[at(i, j) - at(i - 1, j) - at(i, j - 1) + at(i - 1, j - 1) for j in range(1, n + 1)] for i in range(1, n + 1)]
    )
    _require(validate_asm(M), "corner sum matrix")
    return M


def asm_to_height(M: Sequence[Sequence[int]]) -> Matrix:
    c = corner_sum(M)
    n = len(M)
    return _freeze(
        [[i + j - 2 * (c[i - 1][j - 1] if i and j else 0) for j in range(n + 1)] for i in range(n + 1)]
    )


def height_to_corner_sum(h: Sequence[Sequence[int]]) -> Matrix:
    _require(validate_height(h), "height function")
    n = len(h) - 1
    return _freeze([[(i + j - h[i][j]) // 2 for j in range(1, n + 1)] for i in range(1, n + 1)])


def height_to_asm(h: Sequence[Sequence[int]]) -> Matrix:
    _require(validate_height(h), "height function")
    n = len(h) - 1
    M = _freeze(
        [
            [(h[i - 1][j] + h[i][j - 1] - h[i][j] - h[i - 1][j - 1]) // 2 for j in range(1, n + 1)]
            for i in range(1, n + 1)
        ]
    )
    _require(validate_asm(M), "height function (decoded ASM)")
    return M


def max_height(n: int, i: int, j: int) -> int:
    return min(i + j, 2 * n - i - j)


def enumerate_height_functions(n: int) -> Iterator[Matrix]:
    """All height function matrices of order ``n`` by direct search.

    Independent of the poset A_n; used to cross-check the ideal count.
    """
    if n < 1:
        return
    h = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        h[0][k] = h[k][0] = k
        h[n][k] = h[k][n] = n - k
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def fill(pos):
        if pos == len(cells):
            yield _freeze(h)
            return
        i, j = cells[pos]
        for v in (h[i - 1][j] - 1, h[i - 1][j] + 1):
            if abs(v - h[i][j - 1]) != 1:
                continue
            if j == n - 1 and abs(v - h[i][n]) != 1:
                continue
            if i == n - 1 and abs(v - h[n][j]) != 1:
                continue
            h[i][j] = v
            yield from fill(pos + 1)
        h[i][j] = 0

    yield from fill(0)


def enumerate_asms(n: int) -> list[Matrix]:
    return [height_to_asm(h) for h in enumerate_height_functions(n)]


class AsmPoset(Poset):
    """The poset A_n on triples (i, j, k), indexed in lexicographic order."""

    def __init__(self, n: int):
        if n < 1:
            raise AsmError("A_n needs n >= 1")
        labels = [
            (i, j, k) for i in range(n - 1) for j in range(n - 1 - i) for k in range(n - 1 - i - j)
        ]
        index = {lab: x for x, lab in enumerate(labels)}
        covers = []
        for (i, j, k), upper in index.items():
            for below in ((i, j + 1, k), (i, j + 1, k - 1), (i + 1, j, k), (i + 1, j, k - 1)):
                if below in index:
                    covers.append((index[below], upper))
        super().__init__(len(labels), covers, labels)
        self.n = n
        self.chains = {
            (i, j): tuple(index[lab] for lab in chain_S(n, i, j)) for i in range(1, n) for j in range(1, n)
        }

    def label_rank(self, p: int) -> int:
        i, j, _ = self.labels[p]
        return self.n - 2 - i - j


def build_asm_poset(n: int) -> AsmPoset:
    return AsmPoset(n)


def chain_S(n: int, i: int, j: int) -> list[tuple[int, int, int]]:
    """Elements (i-1-t, j-1-t, t) of A_n, by increasing t (and rank)."""
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1):
        raise AsmError(f"square ({i},{j}) outside 1..{n - 1}")
    return [(i - 1 - t, j - 1 - t, t) for t in range(max(0, i + j - n), min(i, j))]


def ideal_to_height(A: AsmPoset, ideal: int) -> Matrix:
    A._check_ideal(ideal)
    n = A.n
    h = [[max_height(n, i, j) for j in range(n + 1)] for i in range(n + 1)]
    for (i, j), chain in A.chains.items():
        h[i][j] -= 2 * sum(ideal >> p & 1 for p in chain)
    return _freeze(h)


def height_to_ideal(A: AsmPoset, h: Sequence[Sequence[int]]) -> int:
    _require(validate_height(h), "height function")
    n = A.n
    if len(h) != n + 1:
        raise AsmError(f"height function has order {len(h) - 1}, poset is A_{n}")
    ideal = 0
    for (i, j), chain in A.chains.items():
        ell = (max_height(n, i, j) - h[i][j]) // 2
        ideal |= to_mask(chain[:ell])
    if not A.is_ideal(ideal):
        raise AsmError("height function decodes to a set that is not down-closed")
    return ideal


def ideal_labels(A: Poset, ideal: int) -> list:
    return [A.labels[p] for p in bits(ideal)]
