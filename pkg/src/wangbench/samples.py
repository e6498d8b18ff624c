"""Small worked instances used by the generators, the CLI demos and the tests."""

from __future__ import annotations

from .core import WHITE, TileSet, Tiling, TilingInstance, tile

W = WHITE

# The 3x3 green/red/yellow rectangle and its solution, row by row.
FIGURE1_ROWS = (
    (tile(W, W, "green", "red"), tile("green", W, "green", "yellow"), tile("green", W, W, "yellow")),
    (tile(W, "red", "red", "red"), tile("red", "yellow", "red", "green"), tile("red", "yellow", W, "yellow")),
    (tile(W, "red", "green", W), tile("green", "green", "red", W), tile("red", "yellow", W, W)),
)

FIGURE1_SEED = FIGURE1_ROWS[0][0]
FIGURE1_TILES = TileSet(t for row in FIGURE1_ROWS for t in row)
FIGURE1_TILING = Tiling(FIGURE1_ROWS)


def figure1_instance(height: int | None = 3, width: int = 3, seeded: bool = True) -> TilingInstance:
    return TilingInstance(FIGURE1_TILES, width, height, FIGURE1_SEED if seeded else None, n=width)


def _blank_run(top: str, bottom: str) -> list:
    return [tile(W, top, W, bottom)] * 4


# The first four rows of the compiled figure-4 machine on bba at width 7.
FIGURE4_ROWS = (
    (tile(W, W, "#2", "q0',b'"), tile("#2", W, "#3", "b'"), tile("#3", W, W, "a'"),
     *_blank_run(W, "_'")),
    (tile(W, "q0',b'", W, "q1,a"), tile(W, "b'", W, "b"), tile(W, "a'", W, "a"),
     *_blank_run("_'", "_")),
    (tile(W, "q1,a", "q2'", "a'"), tile("q2'", "b", W, "q2',b'"), tile(W, "a", W, "a'"),
     *_blank_run("_", "_'")),
    (tile(W, "a'", W, "a"), tile(W, "q2',b'", W, "q2,a"), tile(W, "a'", W, "a"),
     *_blank_run("_'", "_")),
)
FIGURE4_PREFIX = Tiling(FIGURE4_ROWS)
