"""Deterministic tile sets and Boustrophedon completion.

A tile set is deterministic when its colors split into two classes ONE
and TWO with white in ONE such that

* every tile has exactly one of top/bottom in ONE,
* for c in ONE and any c', at most one tile has left = c and top = c',
* for c in TWO and any c', at most one tile has right = c and top = c'.

The detector turns these into forced classes plus "different class"
edges and 2-colors the result.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .core import WHITE, TileSet, TileType, Tiling, WangError
from .solve import SolveResult


class ColorClass(enum.Enum):
    ONE = 1
    TWO = 2

    @property
    def other(self) -> "ColorClass":
        return ColorClass.TWO if self is ColorClass.ONE else ColorClass.ONE


ONE, TWO = ColorClass.ONE, ColorClass.TWO


@dataclass(frozen=True)
class ColorPartition:
    class_of: Mapping[str, ColorClass]

    def __getitem__(self, color: str) -> ColorClass:
        return self.class_of[color]

    def ones(self) -> frozenset[str]:
        return frozenset(c for c, k in self.class_of.items() if k is ONE)


@dataclass(frozen=True)
class Forcing:
    """Why a color is pinned to a class."""
    color: str
    cls: ColorClass
    tiles: tuple[TileType, ...] = ()  # the colliding pair, empty for white
    reason: str = ""


@dataclass(frozen=True)
class Counterexample:
    """A checkable reason a tile set has no valid partition.

    ``chain`` is a sequence of colors c0..ck where each consecutive pair
    are the top and bottom (in either order) of ``links[i]``, so their
    classes must differ.  Kind "odd-cycle": c0 == ck and k is odd.  Kind
    "forced-conflict": ``start`` pins c0, ``end`` pins ck, and the parity
    of k contradicts the two pinned classes.
    """
    kind: str
    chain: tuple[str, ...]
    links: tuple[TileType, ...]
    start: Forcing | None = None
    end: Forcing | None = None

    def describe(self) -> str:
        path = " -> ".join(self.chain)
        if self.kind == "odd-cycle":
            return f"odd cycle of top/bottom constraints: {path}"
        return (f"{self.start.color} must be {self.start.cls.name} ({self.start.reason}) but "
                f"{self.end.color} must be {self.end.cls.name} ({self.end.reason}); "
                f"they are linked by {len(self.links)} top/bottom flips: {path}")


@dataclass(frozen=True)
class DeterminismCertificate:
    deterministic: bool
    partition: ColorPartition | None = None
    counterexample: Counterexample | None = None

    def __bool__(self):
        return self.deterministic


def partition_violations(tile_set: TileSet, partition: ColorPartition) -> list[str]:
    """Check a partition against the definition; [] means it works."""
    cls = partition.class_of
    out = []
    if cls.get(WHITE, ONE) is not ONE:
        out.append("white is not in ONE")
    for t in tile_set:
        if (cls[t.top] is ONE) != (cls[t.bottom] is TWO):
            out.append(f"{t}: top in ONE iff bottom in TWO fails")
    seen_left: dict[tuple[str, str], TileType] = {}
    seen_right: dict[tuple[str, str], TileType] = {}
    for t in tile_set:
        if cls[t.left] is ONE:
            other = seen_left.setdefault((t.left, t.top), t)
            if other != t:
                out.append(f"{other} and {t} share left {t.left} (ONE) and top {t.top}")
        if cls[t.right] is TWO:
            other = seen_right.setdefault((t.right, t.top), t)
            if other != t:
                out.append(f"{other} and {t} share right {t.right} (TWO) and top {t.top}")
    return out


def _color_order(tile_set: TileSet) -> list[str]:
    order = [WHITE]
    for t in tile_set:
        order.extend(t.sides)
    return list(dict.fromkeys(order))


def _forcings(tile_set: TileSet) -> dict[str, list[Forcing]]:
    forced: dict[str, list[Forcing]] = {WHITE: [Forcing(WHITE, ONE, (), "white is in ONE")]}
    by_left: dict[tuple[str, str], TileType] = {}
    by_right: dict[tuple[str, str], TileType] = {}
    for t in tile_set:
        a = by_left.setdefault((t.left, t.top), t)
        if a != t:
            forced.setdefault(t.left, []).append(Forcing(
                t.left, TWO, (a, t), f"{a} and {t} share left {t.left} and top {t.top}"))
        b = by_right.setdefault((t.right, t.top), t)
        if b != t:
            forced.setdefault(t.right, []).append(Forcing(
                t.right, ONE, (b, t), f"{b} and {t} share right {t.right} and top {t.top}"))
    return forced


def detect_deterministic(tile_set: TileSet) -> DeterminismCertificate:
    """Search for a valid color partition by propagation and 2-coloring.

    Colors that no constraint touches go to ONE.  On failure the
    certificate carries the smallest counterexample met in stable order.
    """
    order = _color_order(tile_set)
    forced = _forcings(tile_set)

    # a color pinned both ways is the cheapest counterexample
    for c in order:
        fs = forced.get(c, [])
        classes = {f.cls for f in fs}
        if len(classes) == 2:
            a = next(f for f in fs if f.cls is ONE)
            b = next(f for f in fs if f.cls is TWO)
            return DeterminismCertificate(False, None, Counterexample(
                "forced-conflict", (c,), (), a, b))

    adj: dict[str, list[tuple[str, TileType]]] = {c: [] for c in order}
    for t in tile_set:
        if t.top == t.bottom:
            return DeterminismCertificate(False, None, Counterexample(
                "odd-cycle", (t.top, t.top), (t,)))
        adj[t.top].append((t.bottom, t))
        adj[t.bottom].append((t.top, t))

    assigned: dict[str, ColorClass] = {}
    parent: dict[str, tuple[str, TileType] | None] = {}

    def chain_to_root(c: str) -> tuple[list[str], list[TileType]]:
        colors, links = [c], []
        while parent[c] is not None:
            p, t = parent[c]
            colors.append(p)
            links.append(t)
            c = p
        return colors, links

    for root in order:
        if root in assigned:
            continue
        # anchor each component at a forced color when it has one
        component = _component(root, adj)
        anchor = next((c for c in order if c in component and c in forced), root)
        anchor_cls = forced[anchor][0].cls if anchor in forced else ONE
        assigned[anchor] = anchor_cls
        parent[anchor] = None
        queue = deque([anchor])
        while queue:
            u = queue.popleft()
            for v, t in adj[u]:
                want = assigned[u].other
                if v not in assigned:
                    assigned[v] = want
                    parent[v] = (u, t)
                    queue.append(v)
                    if v in forced and forced[v][0].cls is not want:
                        colors, links = chain_to_root(v)
                        return DeterminismCertificate(False, None, Counterexample(
                            "forced-conflict", tuple(reversed(colors)), tuple(reversed(links)),
                            forced[anchor][0], forced[v][0]))
                elif assigned[v] is not want:
                    return DeterminismCertificate(False, None, _odd_cycle(u, v, t, chain_to_root))
    partition = ColorPartition(dict(assigned))
    return DeterminismCertificate(True, partition, None)


def _component(root: str, adj) -> set[str]:
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _odd_cycle(u: str, v: str, t: TileType, chain_to_root) -> Counterexample:
    cu, lu = chain_to_root(u)
    cv, lv = chain_to_root(v)
    # drop the shared tail above the lowest common ancestor
    while len(cu) > 1 and len(cv) > 1 and cu[-2] == cv[-2]:
        cu.pop(); lu.pop(); cv.pop(); lv.pop()
    # cycle: v .. lca .. u -> v
    colors = cv + list(reversed(cu[:-1])) + [v]
    links = lv + list(reversed(lu)) + [t]
    return Counterexample("odd-cycle", tuple(colors), tuple(links))


class NondeterministicAtRuntime(WangError):
    """Boustrophedon filling met two or more candidate tiles."""

    def __init__(self, cell, candidates, keyed_side, keyed_color, in_required_class):
        self.cell = cell
        self.candidates = tuple(candidates)
        self.keyed_side = keyed_side
        self.keyed_color = keyed_color
        self.in_required_class = in_required_class
        note = ("contradicts the certificate" if in_required_class
                else f"the {keyed_side} color {keyed_color} is outside the class the definition keys on")
        super().__init__(f"{len(self.candidates)} candidates at {cell}: {note}")


@dataclass(frozen=True)
class CompletionResult(SolveResult):
    cells_filled: int = 0
    backtracks: int = 0
    order: tuple[tuple[int, int], ...] = field(default=(), repr=False)


def boustrophedon_complete(tile_set: TileSet, certificate: DeterminismCertificate,
                           seed: TileType, height: int, width: int) -> CompletionResult:
    """Fill the rectangle row by row without backtracking.

    Odd rows go left to right from the seed, even rows right to left.  A
    cell with no candidate ends the run with ``stuck_at`` set; a cell with
    several raises NondeterministicAtRuntime.
    """
    if not certificate.deterministic:
        raise ValueError("boustrophedon completion needs a deterministic certificate")
    if seed not in tile_set:
        raise ValueError("seed must belong to the tile set")
    cls = certificate.partition.class_of
    H, W = height, width
    grid: dict[tuple[int, int], TileType] = {}
    order = []

    def fail(cell):
        return CompletionResult(False, None, 0, 0, cell, len(grid), 0, tuple(order))

    for i in range(1, H + 1):
        forward = i % 2 == 1
        cols = range(1, W + 1) if forward else range(W, 0, -1)
        for j in cols:
            top = WHITE if i == 1 else grid[i - 1, j].bottom
            left = WHITE if j == 1 else (grid[i, j - 1].right if (i, j - 1) in grid else None)
            right = WHITE if j == W else (grid[i, j + 1].left if (i, j + 1) in grid else None)
            cand = [t for t in tile_set
                    if t.top == top
                    and (left is None or t.left == left)
                    and (right is None or t.right == right)
                    and (i < H or t.bottom == WHITE)]
            if (i, j) == (1, 1):
                cand = [t for t in cand if t == seed]
            if not cand:
                return fail((i, j))
            if len(cand) > 1:
                side, color = ("left", left) if forward else ("right", right)
                required = ONE if forward else TWO
                raise NondeterministicAtRuntime((i, j), cand, side, color,
                                                cls.get(color) is required)
            grid[i, j] = cand[0]
            order.append((i, j))
    tiling = Tiling([[grid[i, j] for j in range(1, W + 1)] for i in range(1, H + 1)])
    _check_row_parity(tiling, cls)
    return CompletionResult(True, tiling, H, 0, None, H * W, 0, tuple(order))


def _check_row_parity(tiling: Tiling, cls) -> None:
    for i, row in enumerate(tiling.rows, 1):
        want = ONE if i % 2 == 1 else TWO
        for t in row:
            if cls.get(t.top) is not want:
                raise AssertionError(f"row {i}: top color {t.top} is not in {want.name}")
