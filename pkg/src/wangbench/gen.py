"""Benchmark instance generators.

All families share :data:`FRAME_TILES`, a 16-tile set that tiles every
H x W rectangle: corners, edges and interior, plus the one-row and
one-column shapes.  ``exp-ladder`` sizes grow as towers of two; past
desk scale the instances are meant to be written out, not solved.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import WHITE, TileSet, TilingInstance, tile
from .game import PlayerSequence, resolve_sequence
from .solve import expo

W = WHITE
A, B = "a", "b"  # a: horizontal seam, b: vertical seam


def _frame_tiles() -> TileSet:
    tiles = []
    for top in (W, B):
        for bottom in (B, W):
            for left, right in ((W, A), (A, A), (A, W), (W, W)):
                tiles.append(tile(left, top, right, bottom))
    return TileSet(tiles)


FRAME_TILES = _frame_tiles()

FAMILIES = ("square-n", "exp-ladder", "line-n", "game-alt")

GAME_ALT = PlayerSequence.parse("E^n(A^nE^n)^(k-1)")


@dataclass(frozen=True)
class Generated:
    instance: TilingInstance
    sequence: PlayerSequence | None = None
    params: dict | None = None


def gen_instance(family: str, n: int, k: int = 1) -> Generated:
    """Build one member of ``family``; ``k`` is used by exp-ladder and game-alt."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if family == "square-n":
        return Generated(TilingInstance(FRAME_TILES, n, n, n=n))
    if family == "exp-ladder":
        if k < 1:
            raise ValueError("exp-ladder needs k >= 1")
        height, width = expo(k, n), expo(k - 1, n)
        return Generated(TilingInstance(FRAME_TILES, width, height, n=n))
    if family == "line-n":
        return Generated(TilingInstance(FRAME_TILES, 1, n, n=n))
    if family == "game-alt":
        if k < 1:
            raise ValueError("game-alt needs k >= 1")
        rows = resolve_sequence(GAME_ALT, n, k=k).length
        return Generated(TilingInstance(FRAME_TILES, n, rows, n=n), GAME_ALT, {"k": k})
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
