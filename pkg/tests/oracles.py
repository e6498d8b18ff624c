"""Independent reference implementations used only by the tests.

The reference deciders import nothing they are used to check; the
instance families at the end of the file do.
"""

from __future__ import annotations

import itertools
from collections import deque

from wangbench.core import WHITE, TileSet, TileType, TilingInstance
from wangbench.width1 import DirectedGraph, solve_line, tiles_to_graph, undirected_reachable

COLORS2 = (WHITE, "a", "b")
UNIVERSE2 = tuple(TileType(*s) for s in itertools.product(COLORS2, repeat=4))


def all_tile_sets(max_tiles=3, universe=UNIVERSE2):
    for k in range(1, max_tiles + 1):
        yield from itertools.combinations(universe, k)


def recursive_exists(tiles, H, W, seed=None):
    """Plain recursive enumeration, cell by cell, no pruning besides the
    full-grid check at the leaves."""
    cells = [(i, j) for i in range(H) for j in range(W)]
    grid = {}

    def ok():
        for i in range(H):
            if grid[i, 0].left != WHITE or grid[i, W - 1].right != WHITE:
                return False
            for j in range(W - 1):
                if grid[i, j].right != grid[i, j + 1].left:
                    return False
        for j in range(W):
            if grid[0, j].top != WHITE or grid[H - 1, j].bottom != WHITE:
                return False
            for i in range(H - 1):
                if grid[i, j].bottom != grid[i + 1, j].top:
                    return False
        return seed is None or grid[0, 0] == seed

    def rec(k):
        if k == len(cells):
            return ok()
        for t in tiles:
            grid[cells[k]] = t
            if rec(k + 1):
                return True
        return False

    return bool(tiles) and rec(0)


def universe_tilings(H, W, colors=COLORS2, max_distinct=3):
    """Every valid H x W tiling over the full tile universe on ``colors``,
    obtained by enumerating the colors of all interior edges.

    Returns a set of (frozenset of tiles used, tile at (1,1)).
    """
    inner = [c for c in colors]
    n_vert = H * (W - 1)   # seams between horizontally adjacent cells
    n_horz = (H - 1) * W   # seams between vertically adjacent cells
    out = set()
    for assign in itertools.product(inner, repeat=n_vert + n_horz):
        vs, hs = assign[:n_vert], assign[n_vert:]
        used = {}
        for i in range(H):
            for j in range(W):
                left = WHITE if j == 0 else vs[i * (W - 1) + j - 1]
                right = WHITE if j == W - 1 else vs[i * (W - 1) + j]
                top = WHITE if i == 0 else hs[(i - 1) * W + j]
                bottom = WHITE if i == H - 1 else hs[i * W + j]
                used[i, j] = TileType(left, top, right, bottom)
        distinct = frozenset(used.values())
        if len(distinct) <= max_distinct:
            out.add((distinct, used[0, 0]))
    return out


def table_exists(table, tiles, seed=None):
    tiles = frozenset(tiles)
    for used, corner in table:
        if used <= tiles and (seed is None or corner == seed):
            return True
    return False


def table_index(table):
    """Index universe tilings by corner tile for fast subset lookups."""
    by_corner = {}
    for used, corner in table:
        by_corner.setdefault(corner, []).append(used)
    return by_corner


def indexed_exists(index, tiles, seed):
    tiles = frozenset(tiles)
    return any(used <= tiles for used in index.get(seed, ()))


def bfs_reachable(nodes, edges, s, t, directed=True):
    adj = {v: [] for v in nodes}
    for u, v in edges:
        adj[u].append(v)
        if not directed:
            adj[v].append(u)
    seen, q = {s}, deque([s])
    while q:
        u = q.popleft()
        if u == t:
            return True
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                q.append(v)
    return False


class DisjointSet:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def partition_exists(tiles):
    """Try every split of the colors into ONE/TWO with white in ONE."""
    colors = sorted({c for t in tiles for c in t.sides} - {WHITE})
    for bits in itertools.product((False, True), repeat=len(colors)):
        one = {WHITE} | {c for c, b in zip(colors, bits) if b}
        if all((t.top in one) == (t.bottom not in one) for t in tiles) \
                and _unique(tiles, lambda t: t.left in one, lambda t: (t.left, t.top)) \
                and _unique(tiles, lambda t: t.right not in one, lambda t: (t.right, t.top)):
            return one
    return None


def _unique(tiles, applies, key):
    keys = [key(t) for t in tiles if applies(t)]
    return len(keys) == len(set(keys))


def game_tree_value(tiles, H, W, seed, owners, want_tiled=True):
    """Plain minimax over partial tilings, no memo.  ``owners[i]`` owns row
    i+1.  A row is legal when horizontally valid and matching the row
    above; the whole grid is judged at the end."""
    rows = [r for r in itertools.product(tiles, repeat=W)
            if r[0].left == WHITE and r[-1].right == WHITE
            and all(a.right == b.left for a, b in zip(r, r[1:]))]

    def legal(prev):
        if prev is None:
            return [r for r in rows if all(t.top == WHITE for t in r)
                    and (seed is None or r[0] == seed)]
        return [r for r in rows if all(a.bottom == b.top for a, b in zip(prev, r))]

    def rec(placed):
        if len(placed) == H:
            tiled = all(t.bottom == WHITE for t in placed[-1])
            return tiled == want_tiled
        moves = legal(placed[-1] if placed else None)
        if not moves:
            return not want_tiled
        results = (rec(placed + [m]) for m in moves)
        return any(results) if owners[len(placed)] == "E" else all(results)

    return rec([])



def row_layers(instance, start_rows, successor_rows):
    """Heights at which some row reachable at that depth has a white bottom.

    Layer h is the set of rows that can sit at height h under some valid
    prefix; solve_fixed(H) is yes iff layer H holds a white-bottom row.
    Layers are bitmasks over rows numbered on first sight.  The sequence
    of layers is eventually periodic, so it stops at the first repeat, or
    at the first yes height when ``stop_at_yes``.  Returns
    (first yes height or None, first repeating height h).
    """
    ids, rows, succ = {}, [], {}

    def bit(row):
        if row not in ids:
            ids[row] = len(rows)
            rows.append(row)
        return 1 << ids[row]

    def successors(k):
        if k not in succ:
            m = 0
            for r in successor_rows(instance, rows[k]):
                m |= bit(r)
            succ[k] = m
        return succ[k]

    layer = 0
    for r in start_rows(instance):
        layer |= bit(r)
    seen, h = set(), 1
    while layer not in seen:
        b = layer
        while b:
            low = b & -b
            if rows[low.bit_length() - 1].bottom_white:
                return h, None
            b ^= low
        seen.add(layer)
        nxt, b = 0, layer
        while b:
            low = b & -b
            nxt |= successors(low.bit_length() - 1)
            b ^= low
        layer = nxt
        h += 1
    return None, h


def fixed_or_up_to_row_bound(instance, solve_fixed, enumerate_rows, start_rows, successor_rows):
    """OR of solve_fixed over H = 1..B, B the number of valid rows.

    Heights past the first repeated layer add nothing new, so solve_fixed
    is called for each H up to min(B, repeat - 1), stopping at the first
    yes.  B is only counted as far as that cutoff.  Returns
    (answer, heights tried, first yes height from the layers).
    """
    first, repeat = row_layers(instance, start_rows, successor_rows)
    cutoff = first if first is not None else repeat - 1
    rows = enumerate_rows(instance.tile_set, instance.width)
    bound = sum(1 for _ in itertools.islice(rows, cutoff))
    for H in range(1, min(cutoff, bound) + 1):
        if solve_fixed(instance.with_height(H)).exists:
            return True, H, first
    return False, min(cutoff, bound), first


def count_tilings(tiles, H, W):
    """Number of valid H x W tilings, cell by cell with local checks."""
    grid = {}

    def fits(t, i, j):
        if j == 0 and t.left != WHITE:
            return False
        if j > 0 and grid[i, j - 1].right != t.left:
            return False
        if j == W - 1 and t.right != WHITE:
            return False
        if (i == 0 and t.top != WHITE) or (i > 0 and grid[i - 1, j].bottom != t.top):
            return False
        return i < H - 1 or t.bottom == WHITE

    def rec(k):
        if k == H * W:
            return 1
        i, j = divmod(k, W)
        total = 0
        for t in tiles:
            if fits(t, i, j):
                grid[i, j] = t
                total += rec(k + 1)
        return total

    return rec(0)


# ---- width-1 instance families

def col(top, bottom):
    return TileType(WHITE, top, WHITE, bottom)


def random_digraph(rng, max_nodes=6):
    k = rng.randint(1, max_nodes)
    nodes = [f"v{i}" for i in range(k)]
    edges = {(u, v) for u in nodes for v in nodes if rng.random() < 0.25}
    return DirectedGraph(nodes, edges, rng.choice(nodes), rng.choice(nodes))


def rotation_closed_sets(colors):
    tiles = [col(a, b) for a in colors for b in colors]
    orbits = list(dict.fromkeys(frozenset({t, t.rotated()}) for t in tiles))
    for r in range(len(orbits) + 1):
        for combo in itertools.combinations(orbits, r):
            yield TileSet(sorted(set().union(*combo)))


def reduction_mismatches(colors=(WHITE, "a", "b"), max_n=5):
    out = []
    for ts in rotation_closed_sets(colors):
        for seed in list(ts) + [None]:
            for n in range(1, max_n + 1):
                inst = TilingInstance(ts, 1, n, seed)
                if undirected_reachable(tiles_to_graph(inst)) != solve_line(ts, seed, n):
                    out.append((ts, seed, n))
    return out
