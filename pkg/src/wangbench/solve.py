"""Existence solvers built on the row-transfer relation.

A row is a horizontally valid sequence of tiles.  A fixed-height instance
is a path of exactly H rows through the row graph; an arbitrary-height
instance is plain reachability in that graph, so it terminates even though
the height is unbounded.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (DEFAULT_BUDGET, WHITE, BudgetExceeded, TileSet, TileType,
                   Tiling, TilingInstance, WangError)


@dataclass(frozen=True)
class RowState:
    tiles: tuple[TileType, ...]

    @property
    def width(self) -> int:
        return len(self.tiles)

    @property
    def tops(self) -> tuple[str, ...]:
        return tuple(t.top for t in self.tiles)

    @property
    def bottoms(self) -> tuple[str, ...]:
        return tuple(t.bottom for t in self.tiles)

    @property
    def bottom_white(self) -> bool:
        return all(c == WHITE for c in self.bottoms)

    @property
    def top_white(self) -> bool:
        return all(c == WHITE for c in self.tops)

    def __str__(self):
        return " ".join(map(str, self.tiles))


@dataclass(frozen=True)
class SolveResult:
    exists: bool
    witness: Tiling | None = None
    rows_explored: int = 0
    states_memoized: int = 0
    stuck_at: tuple[int, int] | None = None

    def __bool__(self):
        return self.exists


def enumerate_rows(tile_set: TileSet, width: int, *, top_white: bool = False,
                   bottom_white: bool = False, first_tile: TileType | None = None,
                   tops: Sequence[str] | None = None) -> Iterator[RowState]:
    """Yield every horizontally valid row satisfying the side conditions.

    Rows come out in lexicographic order of tile indices.  ``tops`` pins
    the top color of every column, which is how successors of a row are
    generated.
    """
    if width < 1:
        raise ValueError("width must be >= 1")
    if tops is not None and len(tops) != width:
        raise ValueError("tops must have one color per column")
    tiles = tile_set.tiles

    def fits(t: TileType, j: int) -> bool:
        if top_white and t.top != WHITE:
            return False
        if bottom_white and t.bottom != WHITE:
            return False
        if tops is not None and t.top != tops[j]:
            return False
        if j == width - 1 and t.right != WHITE:
            return False
        return True

    columns = []
    for j in range(width):
        cand = [t for t in tiles if fits(t, j)]
        if j == 0:
            cand = [t for t in cand if t.left == WHITE]
            if first_tile is not None:
                cand = [t for t in cand if t == first_tile]
        if not cand:
            return
        columns.append(cand)

    # bucket each column's candidates by left color for the chaining step
    by_left = []
    for cand in columns:
        d: dict[str, list[TileType]] = {}
        for t in cand:
            d.setdefault(t.left, []).append(t)
        by_left.append(d)

    row: list[TileType] = []

    def extend(j: int) -> Iterator[RowState]:
        if j == width:
            yield RowState(tuple(row))
            return
        options = columns[0] if j == 0 else by_left[j].get(row[-1].right, ())
        for t in options:
            row.append(t)
            yield from extend(j + 1)
            row.pop()

    yield from extend(0)


def row_compatible(upper: RowState, lower: RowState) -> bool:
    if upper.width != lower.width:
        raise ValueError(f"width mismatch: {upper.width} vs {lower.width}")
    return all(a.bottom == b.top for a, b in zip(upper.tiles, lower.tiles))


def start_rows(instance: TilingInstance, *, last: bool = False) -> Iterator[RowState]:
    return enumerate_rows(instance.tile_set, instance.width, top_white=True,
                          first_tile=instance.seed, bottom_white=last)


def successor_rows(instance: TilingInstance, row: RowState, *,
                   last: bool = False) -> Iterator[RowState]:
    return enumerate_rows(instance.tile_set, instance.width, tops=row.bottoms,
                          bottom_white=last)


def solve_fixed(instance: TilingInstance, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Depth-first search over rows for a fixed-height instance.

    A (remaining height, row) pair shown to lead nowhere is remembered and
    never expanded again.  Raises BudgetExceeded when more than ``budget``
    rows have been explored.
    """
    H = instance.height
    if H is None:
        raise ValueError("solve_fixed needs a fixed height; use solve_arbitrary")
    explored = 0
    dead: set[tuple[int, RowState]] = set()

    def tick():
        nonlocal explored
        explored += 1
        if explored > budget:
            raise BudgetExceeded("solve_fixed", budget)

    # iterative DFS: path[k] is the row placed at height k+1
    path: list[RowState] = []
    stack: list[Iterator[RowState]] = [start_rows(instance, last=(H == 1))]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            if path:
                dead.add((H - len(path), path.pop()))
            continue
        depth = len(path) + 1  # row index of nxt
        remaining = H - depth
        if (remaining, nxt) in dead:
            continue
        tick()
        path.append(nxt)
        if depth == H:
            return SolveResult(True, Tiling([r.tiles for r in path]), explored, len(dead))
        stack.append(successor_rows(instance, nxt, last=(depth + 1 == H)))
    return SolveResult(False, None, explored, len(dead))


def solve_arbitrary(instance: TilingInstance, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Breadth-first reachability from start rows to white-bottom rows.

    BFS gives a witness of minimal height.
    """
    explored = 0
    parent: dict[RowState, RowState | None] = {}
    queue: deque[RowState] = deque()

    def witness(row: RowState) -> Tiling:
        rows = []
        while row is not None:
            rows.append(row.tiles)
            row = parent[row]
        return Tiling(rows[::-1])

    def visit(row: RowState, prev: RowState | None) -> bool:
        nonlocal explored
        if row in parent:
            return False
        explored += 1
        if explored > budget:
            raise BudgetExceeded("solve_arbitrary", budget)
        parent[row] = prev
        queue.append(row)
        return row.bottom_white

    for row in start_rows(instance):
        if visit(row, None):
            return SolveResult(True, witness(row), explored, len(parent))
    while queue:
        row = queue.popleft()
        for succ in successor_rows(instance, row):
            if visit(succ, row):
                return SolveResult(True, witness(succ), explored, len(parent))
    return SolveResult(False, None, explored, len(parent))


def solve_seed_free(instance: TilingInstance, budget: int = DEFAULT_BUDGET) -> SolveResult:
    return solve(instance.without_seed(), budget)


def solve(instance: TilingInstance, budget: int = DEFAULT_BUDGET) -> SolveResult:
    if instance.height is None:
        return solve_arbitrary(instance, budget)
    return solve_fixed(instance, budget)


class ExpoOverflow(WangError, OverflowError):
    pass


def expo(k: int, n: int, limit: int = 2**63 - 1) -> int:
    """The tower exp_k(n): exp_0(n) = n, exp_k(n) = 2 ** exp_{k-1}(n).

    Raises ExpoOverflow when any intermediate value exceeds ``limit``.
    """
    if k < 0 or n < 0:
        raise ValueError("k and n must be nonnegative")
    value = n
    if value > limit:
        raise ExpoOverflow(f"exp_0({n}) exceeds {limit}")
    for level in range(1, k + 1):
        if value >= limit.bit_length():
            raise ExpoOverflow(f"exp_{level}({n}) exceeds {limit}")
        value = 1 << value
        if value > limit:
            raise ExpoOverflow(f"exp_{level}({n}) exceeds {limit}")
    return value
