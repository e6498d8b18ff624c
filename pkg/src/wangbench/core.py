"""Tiles, tilings, instances, the reference validity checker and the
exhaustive oracle every other module is tested against.

Sides are called left/top/right/bottom throughout; "up"/"down" are
accepted as aliases of top/bottom when reading tile dictionaries.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Color = str
WHITE: Color = "white"

DEFAULT_BUDGET = 10**7


class WangError(Exception):
    """Base class for errors raised by this package."""


class BudgetExceeded(WangError):
    """A search ran out of budget; the answer is inconclusive, not "no"."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: budget of {budget} exceeded (inconclusive)")
        self.budget = budget


class ForeignTileError(WangError):
    """A tiling places a tile that is not part of the tile set."""


def intern_color(name: str) -> Color:
    if not isinstance(name, str) or not name:
        raise ValueError(f"colors are non-empty strings, got {name!r}")
    return sys.intern(name)


@dataclass(frozen=True, order=True)
class TileType:
    left: Color
    top: Color
    right: Color
    bottom: Color

    def __post_init__(self):
        for side in ("left", "top", "right", "bottom"):
            object.__setattr__(self, side, intern_color(getattr(self, side)))

    @property
    def sides(self) -> tuple[Color, Color, Color, Color]:
        return (self.left, self.top, self.right, self.bottom)

    def rotated(self) -> "TileType":
        """The tile turned by 180 degrees."""
        return TileType(self.right, self.bottom, self.left, self.top)

    def transposed(self) -> "TileType":
        """Mirror along the main diagonal (left<->top, right<->bottom)."""
        return TileType(self.top, self.left, self.bottom, self.right)

    def recolored(self, mapping) -> "TileType":
        return TileType(*(mapping.get(c, c) for c in self.sides))

    def to_dict(self) -> dict:
        return {"left": self.left, "top": self.top, "right": self.right, "bottom": self.bottom}

    @classmethod
    def from_dict(cls, d: dict) -> "TileType":
        top = d["top"] if "top" in d else d["up"]
        bottom = d["bottom"] if "bottom" in d else d["down"]
        return cls(d["left"], top, d["right"], bottom)

    def __str__(self) -> str:
        return f"<{self.left},{self.top},{self.right},{self.bottom}>"


def tile(left: Color, top: Color, right: Color, bottom: Color) -> TileType:
    return TileType(left, top, right, bottom)


@dataclass(frozen=True)
class TileSet:
    """A finite set of tile types with a stable order.

    The order is the order of first appearance; it is the tile ordering
    used for every lexicographic tie-break in the package.
    """

    tiles: tuple[TileType, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, tiles: Iterable[TileType] = ()):
        unique = tuple(dict.fromkeys(tiles))
        object.__setattr__(self, "tiles", unique)
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(unique)})

    @property
    def colors(self) -> frozenset[Color]:
        return frozenset(c for t in self.tiles for c in t.sides)

    def index(self, t: TileType) -> int:
        return self._index[t]

    def __contains__(self, t) -> bool:
        return t in self._index

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self) -> Iterator[TileType]:
        return iter(self.tiles)

    def __eq__(self, other):
        # order matters for tie-breaking, so it is part of equality
        return isinstance(other, TileSet) and self.tiles == other.tiles

    def __hash__(self):
        return hash(self.tiles)


@dataclass(frozen=True)
class Tiling:
    """An H x W grid of tiles; ``rows[i-1][j-1]`` is the tile at (i, j)."""

    rows: tuple[tuple[TileType, ...], ...]

    def __init__(self, rows: Sequence[Sequence[TileType]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("a tiling needs at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged tiling: every row must have the same width")
        object.__setattr__(self, "rows", rows)

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return len(self.rows[0])

    def at(self, i: int, j: int) -> TileType:
        """1-based access."""
        return self.rows[i - 1][j - 1]

    def cells(self) -> Iterator[tuple[int, int, TileType]]:
        for i, row in enumerate(self.rows, 1):
            for j, t in enumerate(row, 1):
                yield i, j, t

    def transposed(self) -> "Tiling":
        return Tiling([[self.at(i, j).transposed() for i in range(1, self.height + 1)]
                       for j in range(1, self.width + 1)])

    def recolored(self, mapping) -> "Tiling":
        return Tiling([[t.recolored(mapping) for t in row] for row in self.rows])


@dataclass(frozen=True)
class TilingInstance:
    """One input of TILING(h, w): ``height=None`` means arbitrary height."""

    tile_set: TileSet
    width: int
    height: int | None
    seed: TileType | None = None
    n: int = 0

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be >= 1")
        if self.height is not None and self.height < 1:
            raise ValueError("height must be >= 1 (or None for arbitrary height)")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.seed is not None and self.seed not in self.tile_set:
            raise ValueError(f"seed {self.seed} is not in the tile set")

    @property
    def arbitrary_height(self) -> bool:
        return self.height is None

    def with_height(self, height: int | None) -> "TilingInstance":
        return TilingInstance(self.tile_set, self.width, height, self.seed, self.n)

    def without_seed(self) -> "TilingInstance":
        return TilingInstance(self.tile_set, self.width, self.height, None, self.n)


@dataclass(frozen=True)
class Violation:
    constraint: str  # "1".."4" or "seed"
    row: int
    col: int
    detail: str


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def constraints(self) -> set[str]:
        return {v.constraint for v in self.violations}


def validate_tiling(tile_set: TileSet, tiling: Tiling,
                    seed: TileType | None = None) -> ValidityReport:
    """Check the four border/matching constraints and the seed.

    Every violation is reported.  Raises ForeignTileError if a cell holds
    a tile outside ``tile_set``.
    """
    for i, j, t in tiling.cells():
        if t not in tile_set:
            raise ForeignTileError(f"cell ({i},{j}) holds {t}, which is not in the tile set")
    H, W = tiling.height, tiling.width
    out = []
    for i in range(1, H + 1):
        if tiling.at(i, 1).left != WHITE:
            out.append(Violation("1", i, 1, f"left border is {tiling.at(i, 1).left}"))
        if tiling.at(i, W).right != WHITE:
            out.append(Violation("1", i, W, f"right border is {tiling.at(i, W).right}"))
    for j in range(1, W + 1):
        if tiling.at(1, j).top != WHITE:
            out.append(Violation("2", 1, j, f"top border is {tiling.at(1, j).top}"))
        if tiling.at(H, j).bottom != WHITE:
            out.append(Violation("2", H, j, f"bottom border is {tiling.at(H, j).bottom}"))
    for i in range(1, H + 1):
        for j in range(1, W):
            a, b = tiling.at(i, j), tiling.at(i, j + 1)
            if a.right != b.left:
                out.append(Violation("3", i, j, f"right {a.right} != left {b.left} of ({i},{j + 1})"))
    for i in range(1, H):
        for j in range(1, W + 1):
            a, b = tiling.at(i, j), tiling.at(i + 1, j)
            if a.bottom != b.top:
                out.append(Violation("4", i, j, f"bottom {a.bottom} != top {b.top} of ({i + 1},{j})"))
    if seed is not None and tiling.at(1, 1) != seed:
        out.append(Violation("seed", 1, 1, f"expected seed {seed}, found {tiling.at(1, 1)}"))
    return ValidityReport(tuple(out))


@dataclass(frozen=True)
class BruteForceResult:
    exists: bool
    witness: Tiling | None = None
    nodes_visited: int = 0

    def __bool__(self):
        return self.exists


def _first_assignment(tiles: Sequence[TileType], H: int, W: int,
                      seed: TileType | None) -> tuple[Tiling | None, int]:
    """Lexicographically first valid assignment, cells in row-major order.

    A prefix that already breaks a constraint between placed cells is
    skipped together with all of its extensions; no other pruning.
    """
    n = H * W
    grid: list[TileType] = [None] * n  # type: ignore[list-item]
    visited = 0
    # border conditions depend on the cell only; built on first visit
    static: dict[int, list[TileType]] = {}

    def allowed(k: int) -> list[TileType]:
        if k not in static:
            i, j = divmod(k, W)
            static[k] = [t for t in tiles
                         if (j > 0 or t.left == WHITE) and (j < W - 1 or t.right == WHITE)
                         and (i > 0 or t.top == WHITE) and (i < H - 1 or t.bottom == WHITE)
                         and (k > 0 or seed is None or t == seed)]
        return static[k]

    def rec(k: int) -> bool:
        nonlocal visited
        if k == n:
            return True
        i, j = divmod(k, W)
        for t in allowed(k):
            visited += 1
            if j > 0 and grid[k - 1].right != t.left:
                continue
            if i > 0 and grid[k - W].bottom != t.top:
                continue
            grid[k] = t
            if rec(k + 1):
                return True
        return False

    if rec(0):
        return Tiling([grid[r * W:(r + 1) * W] for r in range(H)]), visited
    return None, visited


def brute_force_exists(instance: TilingInstance, height_cap: int | None = None,
                       budget: int = 10**9) -> BruteForceResult:
    """Decide the instance by enumerating assignments of tiles to cells.

    Assignments are taken in lexicographic order (row-major cells, tile
    index), so the witness is the first valid assignment in that order.
    For arbitrary height, heights 1..height_cap are tried in turn.  The
    budget bounds the nominal enumeration space |T|^(H*W); exceeding it
    raises BudgetExceeded instead of truncating.
    """
    if instance.height is None:
        if height_cap is None:
            raise ValueError("arbitrary-height instances need a height_cap")
        heights = range(1, height_cap + 1)
    else:
        heights = [instance.height]
    tiles = instance.tile_set.tiles
    W = instance.width
    space = 0
    visited = 0
    for H in heights:
        space += len(tiles) ** (H * W)
        if space > budget:
            raise BudgetExceeded(f"brute force over {H}x{W}", budget)
        witness, v = _first_assignment(tiles, H, W, instance.seed)
        visited += v
        if witness is not None:
            return BruteForceResult(True, witness, visited)
    return BruteForceResult(False, None, visited)
