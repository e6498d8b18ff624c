"""Readers and writers for the on-disk formats.

Tile sets, instances, tilings and strategies are JSON; graphs are plain
edge lists.  Every ``dump_*``/``format_*`` output parses back to an equal
value.  Turing machine text lives in :mod:`wangbench.tmred`.
"""

from __future__ import annotations

import json

from .core import TileSet, TileType, Tiling, TilingInstance
from .game import Strategy
from .solve import RowState
from .width1 import DirectedGraph, UndirectedGraph


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def tileset_to_json(tile_set: TileSet, seed: TileType | None = None) -> dict:
    return {"tiles": [t.to_dict() for t in tile_set],
            "seed": seed.to_dict() if seed is not None else None}


def dump_tileset(tile_set: TileSet, seed: TileType | None = None) -> str:
    return _dumps(tileset_to_json(tile_set, seed))


def parse_tileset(text: str) -> tuple[TileSet, TileType | None]:
    d = json.loads(text)
    tiles = TileSet(TileType.from_dict(t) for t in d["tiles"])
    seed = d.get("seed")
    return tiles, (TileType.from_dict(seed) if seed is not None else None)


def dump_instance(instance: TilingInstance) -> str:
    d = tileset_to_json(instance.tile_set, instance.seed)
    d |= {"width": instance.width, "height": instance.height, "n": instance.n}
    return _dumps(d)


def parse_instance(text: str) -> TilingInstance:
    d = json.loads(text)
    tiles, seed = parse_tileset(text)
    return TilingInstance(tiles, d["width"], d["height"], seed, d.get("n", 0))


def dump_tiling(tiling: Tiling) -> str:
    return _dumps({"rows": [[t.to_dict() for t in row] for row in tiling.rows]})


def parse_tiling(text: str) -> Tiling:
    d = json.loads(text)
    return Tiling([[TileType.from_dict(t) for t in row] for row in d["rows"]])


def _check_name(name: str) -> str:
    if not name or any(c.isspace() for c in name):
        raise ValueError(f"graph node names must be nonempty and space-free: {name!r}")
    return name


def format_graph(g: DirectedGraph | UndirectedGraph) -> str:
    """``s``/``t`` lines, ``node`` lines for isolated nodes, then one edge per line."""
    if isinstance(g, UndirectedGraph):
        # a self-loop is a one-element frozenset
        edges = sorted((min(e), max(e)) for e in g.edges)
    else:
        edges = sorted(g.edges)
    touched = {x for e in edges for x in e} | {g.source, g.target}
    lines = [f"s {_check_name(g.source)}", f"t {_check_name(g.target)}"]
    lines += [f"node {_check_name(v)}" for v in sorted(g.nodes - touched)]
    lines += [f"{_check_name(u)} {_check_name(v)}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str, directed: bool = True) -> DirectedGraph | UndirectedGraph:
    source = target = None
    nodes, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two fields, got {raw!r}")
        a, b = parts
        if a == "s" and source is None:
            source = b
        elif a == "t" and target is None:
            target = b
        elif a == "node":
            nodes.append(b)
        else:
            edges.append((a, b))
    if source is None or target is None:
        raise ValueError("graph file needs an 's <name>' and a 't <name>' line")
    cls = DirectedGraph if directed else UndirectedGraph
    return cls(nodes, edges, source, target)


def _row(tiles) -> list[dict] | None:
    return None if tiles is None else [t.to_dict() for t in tiles.tiles]


def _unrow(d) -> RowState | None:
    return None if d is None else RowState(tuple(TileType.from_dict(t) for t in d))


def dump_strategy(strategy: Strategy) -> str:
    moves = [{"position": pos, "frontier": _row(frontier), "row": _row(row)}
             for (pos, frontier), row in strategy.moves.items()]
    moves.sort(key=lambda m: (m["position"], json.dumps(m["frontier"])))
    return _dumps({"by_phase": strategy.by_phase, "moves": moves})


def parse_strategy(text: str) -> Strategy:
    d = json.loads(text)
    moves = {(m["position"], _unrow(m["frontier"])): _unrow(m["row"]) for m in d["moves"]}
    return Strategy(d["by_phase"], moves)
