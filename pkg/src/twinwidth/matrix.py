"""Ordered 0/1 matrices: divisions, grid and mixed minors, and decreasing chains."""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Sequence

from twinwidth.core import Graph
from twinwidth.witnesses import VertexOrder

MAX_GRAPH_ORDER = 8

CellTest = Callable[[int, int, int, int], bool]


@dataclass(frozen=True)
class OrderedMatrix:
    entries: tuple[tuple[int, ...], ...]
    order: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if entries and any(len(r) != len(entries[0]) for r in entries):
            raise ValueError("ragged matrix")
        if any(x not in (0, 1) for r in entries for x in r):
            raise ValueError("entries must be 0 or 1")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> OrderedMatrix:
        return cls(tuple(tuple(int(ch) for ch in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> OrderedMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> OrderedMatrix:
        cols = rows if cols is None else cols
        return cls(tuple((1,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def ones_positions(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.entries) for j, x in enumerate(row) if x]

    def to_strings(self) -> list[str]:
        return ["".join(map(str, r)) for r in self.entries]


@dataclass(frozen=True)
class Division:
    """Cut positions: block ``b`` of rows is ``[cuts[b-1], cuts[b])`` with implicit 0 and end."""

    row_cuts: tuple[int, ...]
    col_cuts: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.row_cuts) + 1

    def row_blocks(self, rows: int) -> list[tuple[int, int]]:
        b = (0, *self.row_cuts, rows)
        return list(zip(b, b[1:]))

    def col_blocks(self, cols: int) -> list[tuple[int, int]]:
        b = (0, *self.col_cuts, cols)
        return list(zip(b, b[1:]))


def adjacency_matrix(G: Graph, order: VertexOrder | Sequence[int] | None = None) -> OrderedMatrix:
    order = tuple(range(G.n)) if order is None else tuple(order)
    if sorted(order) != list(range(G.n)):
        raise ValueError("order must be a permutation of the vertices")
    adj = G.adjacency
    entries = tuple(tuple(adj[u] >> v & 1 for v in order) for u in order)
    return OrderedMatrix(entries, order)


def delete_rows_cols(M: OrderedMatrix, rows: Iterable[int], cols: Iterable[int]) -> OrderedMatrix:
    drop_r, drop_c = set(rows), set(cols)
    keep_c = [j for j in range(M.cols) if j not in drop_c]
    entries = tuple(tuple(M.entries[i][j] for j in keep_c)
                    for i in range(M.rows) if i not in drop_r)
    order = None
    if M.order is not None and drop_r == drop_c:
        order = tuple(v for i, v in enumerate(M.order) if i not in drop_r)
    return OrderedMatrix(entries, order)


def _grid_cell_test(M: OrderedMatrix) -> CellTest:
    # 2D prefix sums: any 1 in [r0,r1) x [c0,c1)
    R, C = M.rows, M.cols
    S = [[0] * (C + 1) for _ in range(R + 1)]
    for i in range(R):
        acc = 0
        for j in range(C):
            acc += M.entries[i][j]
            S[i + 1][j + 1] = S[i][j + 1] + acc

    def test(r0: int, r1: int, c0: int, c1: int) -> bool:
        return S[r1][c1] - S[r0][c1] - S[r1][c0] + S[r0][c0] > 0

    return test


def _mixed_cell_test(M: OrderedMatrix) -> CellTest:
    rowbits = [sum(x << j for j, x in enumerate(r)) for r in M.entries]
    colbits = [sum(M.entries[i][j] << i for i in range(M.rows)) for j in range(M.cols)]

    def test(r0: int, r1: int, c0: int, c1: int) -> bool:
        if r1 - r0 < 2 or c1 - c0 < 2:
            return False
        cm = ((1 << c1) - 1) ^ ((1 << c0) - 1)
        first = rowbits[r0] & cm
        if all(rowbits[i] & cm == first for i in range(r0 + 1, r1)):
            return False
        rm = ((1 << r1) - 1) ^ ((1 << r0) - 1)
        first = colbits[c0] & rm
        return any(colbits[j] & rm != first for j in range(c0 + 1, c1))

    return test


def _greedy_columns(test: CellTest, blocks: Sequence[tuple[int, int]], k: int,
                    cols: int) -> tuple[int, ...] | None:
    """Leftmost column cuts making every cell of ``blocks`` x column-block pass ``test``.

    Both cell tests are monotone under widening a column block, so cutting as
    early as possible never loses a solution.
    """
    cuts = []
    start = 0
    for b in range(k):
        end = start + 1
        while end <= cols and not all(test(r0, r1, start, end) for r0, r1 in blocks):
            end += 1
        if end > cols:
            return None
        if b < k - 1:
            cuts.append(end)
            start = end
    return tuple(cuts)


def _find_division(M: OrderedMatrix, k: int, test: CellTest) -> Division | None:
    if not 1 <= k <= min(M.rows, M.cols):
        raise ValueError(f"k must be between 1 and {min(M.rows, M.cols)}, got {k}")
    R, C = M.rows, M.cols

    def search(start: int, blocks: list[tuple[int, int]]) -> Division | None:
        if len(blocks) == k - 1:
            full = [*blocks, (start, R)]
            cols = _greedy_columns(test, full, k, C)
            if cols is None:
                return None
            return Division(tuple(b[1] for b in blocks), cols)
        remaining = k - 1 - len(blocks)
        for end in range(start + 1, R - remaining + 1):
            nxt = [*blocks, (start, end)]
            # a prefix of row blocks that already has no column division is dead
            if _greedy_columns(test, nxt, k, C) is None:
                continue
            found = search(end, nxt)
            if found is not None:
                return found
        return None

    return search(0, [])


def find_grid_minor(M: OrderedMatrix, k: int) -> Division | None:
    """A k-division with a 1-entry in each of its k^2 cells, or None."""
    return _find_division(M, k, _grid_cell_test(M))


def find_mixed_minor(M: OrderedMatrix, k: int) -> Division | None:
    """A k-division whose every cell has two distinct rows and two distinct columns, or None."""
    return _find_division(M, k, _mixed_cell_test(M))


def has_k_grid_minor(M: OrderedMatrix, k: int) -> bool:
    return find_grid_minor(M, k) is not None


def has_k_mixed_minor(M: OrderedMatrix, k: int) -> bool:
    return find_mixed_minor(M, k) is not None


def _largest(M: OrderedMatrix, finder) -> int:
    best = 0
    for k in range(1, min(M.rows, M.cols) + 1):
        if finder(M, k) is None:
            break
        best = k
    return best


def grid_number(M: OrderedMatrix) -> int:
    return _largest(M, find_grid_minor)


def mixed_number(M: OrderedMatrix) -> int:
    """Largest k with a k-mixed minor; 0 if even the whole matrix is not mixed."""
    return _largest(M, find_mixed_minor)


def _graph_number(G: Graph, number: Callable[[OrderedMatrix], int]) -> int:
    if G.n > MAX_GRAPH_ORDER:
        raise ValueError(f"minimising over all orders is limited to {MAX_GRAPH_ORDER} vertices")
    if G.n == 0:
        return 0
    # whether the whole matrix qualifies does not depend on the order
    floor = 1 if number(adjacency_matrix(G)) >= 1 else 0
    best = math.inf
    for perm in itertools.permutations(range(G.n)):
        # reversing the order rotates the matrix by 180 degrees: same numbers
        if G.n > 1 and perm[0] > perm[-1]:
            continue
        best = min(best, number(adjacency_matrix(G, perm)))
        if best <= floor:
            break
    return int(best)


def graph_grid_number(G: Graph) -> int:
    """Minimum grid number over all symmetric adjacency matrices of ``G``."""
    return _graph_number(G, grid_number)


def graph_mixed_number(G: Graph) -> int:
    return _graph_number(G, mixed_number)


def longest_decreasing_chain(M: OrderedMatrix,
                             triangle: Literal["upper", "lower"] | None = None) -> int:
    """Longest run of 1-entries with rows strictly increasing and columns strictly decreasing.

    ``triangle="upper"`` keeps only entries strictly above the diagonal
    (column > row), ``"lower"`` only those strictly below.
    """
    pts = M.ones_positions()
    if triangle == "upper":
        pts = [(i, j) for i, j in pts if j > i]
    elif triangle == "lower":
        pts = [(i, j) for i, j in pts if j < i]
    elif triangle is not None:
        raise ValueError(f"unknown triangle {triangle!r}")
    # rows ascending, columns ascending within a row: a strictly decreasing
    # column subsequence then never takes two entries of the same row
    pts.sort()
    tails: list[int] = []
    for _, j in pts:
        key = -j
        pos = bisect.bisect_left(tails, key)
        if pos == len(tails):
            tails.append(key)
        else:
            tails[pos] = key
    return len(tails)
