"""Width-1 tilings and their correspondence with graph reachability.

With a single column only tops and bottoms matter, so a tiling is a
vertical chain of tiles.  Directed graphs reduce to such chains, and
chains over rotation-closed tile sets reduce to undirected graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import WHITE, TileSet, TileType, TilingInstance


@dataclass(frozen=True)
class DirectedGraph:
    nodes: frozenset[str]
    edges: frozenset[tuple[str, str]]
    source: str
    target: str

    def __init__(self, nodes, edges, source, target):
        edges = frozenset((u, v) for u, v in edges)
        nodes = frozenset(nodes) | {source, target} | {x for e in edges for x in e}
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)


@dataclass(frozen=True)
class UndirectedGraph:
    nodes: frozenset[str]
    edges: frozenset[frozenset[str]]
    source: str
    target: str

    def __init__(self, nodes, edges, source, target):
        edges = frozenset(frozenset(e) for e in edges)
        nodes = frozenset(nodes) | {source, target} | {x for e in edges for x in e}
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)

    def neighbours(self) -> dict[str, set[str]]:
        adj = {v: set() for v in self.nodes}
        for e in self.edges:
            u, v = tuple(e) if len(e) == 2 else (next(iter(e)),) * 2
            adj[u].add(v)
            adj[v].add(u)
        return adj


def column_tiles(tile_set: TileSet) -> list[TileType]:
    """Tiles usable in a single column: white on both sides."""
    return [t for t in tile_set if t.left == WHITE and t.right == WHITE]


def solve_line(tile_set: TileSet, seed: TileType | None, height: int | None) -> bool:
    """Is there a vertical chain of ``height`` tiles (any height if None)?

    The chain starts at the seed (or any usable tile when seed is None),
    which must have a white top, and ends at a white-bottom tile.
    """
    tiles = column_tiles(tile_set)
    if seed is None:
        starts = [t for t in tiles if t.top == WHITE]
    else:
        starts = [seed] if seed in tiles and seed.top == WHITE else []
    below: dict[str, list[TileType]] = {}
    for t in tiles:
        below.setdefault(t.top, []).append(t)

    if height is not None:
        layer = set(starts)
        for _ in range(height - 1):
            layer = {u for t in layer for u in below.get(t.bottom, ())}
        return any(t.bottom == WHITE for t in layer)

    # any height: a shortest chain never repeats a tile, so |T| steps suffice
    seen = set(starts)
    queue = deque(starts)
    while queue:
        t = queue.popleft()
        if t.bottom == WHITE:
            return True
        for u in below.get(t.bottom, ()):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return False


def graph_to_tiles(g: DirectedGraph) -> TilingInstance:
    """Encode s-t reachability as a width-1 tiling of height 2 + |nodes|."""
    if WHITE in g.nodes:
        raise ValueError(f"node name {WHITE!r} is reserved for the border color")
    s, t = g.source, g.target
    seed = TileType(WHITE, WHITE, WHITE, s)
    tiles = [seed, TileType(WHITE, s, WHITE, s), TileType(WHITE, t, WHITE, WHITE)]
    tiles += [TileType(WHITE, u, WHITE, v) for u, v in sorted(g.edges)]
    return TilingInstance(TileSet(tiles), 1, 2 + len(g.nodes), seed)


def directed_reachable(g: DirectedGraph) -> bool:
    adj: dict[str, list[str]] = {}
    for u, v in g.edges:
        adj.setdefault(u, []).append(v)
    seen, queue = {g.source}, deque([g.source])
    while queue:
        u = queue.popleft()
        if u == g.target:
            return True
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return False


def missing_rotations(tile_set: TileSet) -> list[TileType]:
    """180-degree rotations absent from the set, in tile order."""
    return list(dict.fromkeys(t.rotated() for t in tile_set if t.rotated() not in tile_set))


def is_rotation_closed(tile_set: TileSet) -> bool:
    return not missing_rotations(tile_set)


def rotation_closure(tile_set: TileSet) -> TileSet:
    return TileSet(list(tile_set) + missing_rotations(tile_set))


SOURCE, TARGET = "source", "target"


def layer_node(index: int, layer: int) -> str:
    return f"({index},{layer})"


def tiles_to_graph(instance: TilingInstance) -> UndirectedGraph:
    """Layered graph: source, ``height`` copies of the usable tiles, target.

    Source edges go to the seed only when the instance has one.
    """
    ts = instance.tile_set
    if instance.width != 1:
        raise ValueError("tiles_to_graph needs a width-1 instance")
    if instance.height is None:
        raise ValueError("tiles_to_graph needs a fixed height")
    missing = missing_rotations(ts)
    if missing:
        raise ValueError("tile set is not closed under rotation; missing "
                         + ", ".join(map(str, missing)))
    n = instance.height
    tiles = column_tiles(ts)
    idx = {t: ts.index(t) for t in tiles}
    nodes = {SOURCE, TARGET} | {layer_node(idx[t], k) for t in tiles for k in range(1, n + 1)}
    edges = set()
    for t in tiles:
        if t.top == WHITE and (instance.seed is None or t == instance.seed):
            edges.add((SOURCE, layer_node(idx[t], 1)))
        if t.bottom == WHITE:
            edges.add((layer_node(idx[t], n), TARGET))
    for t in tiles:
        for u in tiles:
            if t.bottom == u.top:
                for k in range(1, n):
                    edges.add((layer_node(idx[t], k), layer_node(idx[u], k + 1)))
    return UndirectedGraph(nodes, edges, SOURCE, TARGET)


def undirected_reachable(g: UndirectedGraph) -> bool:
    adj = g.neighbours()
    seen, queue = {g.source}, deque([g.source])
    while queue:
        u = queue.popleft()
        if u == g.target:
            return True
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return False
