"""Fixed-size tiling problems as existential first-order formulas.

For a k x l rectangle the formula quantifies one variable per cell over
the tile set and conjoins neighbour atoms H, V with border atoms LW, RW,
TW, BW and an optional SEED atom.  The formula depends only on (k, l).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import WHITE, TileSet, TileType

PREDICATES = {"H": 2, "V": 2, "LW": 1, "RW": 1, "TW": 1, "BW": 1, "SEED": 1}


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[str, ...]

    def __post_init__(self):
        if PREDICATES.get(self.pred) != len(self.args):
            raise ValueError(f"bad atom {self.pred}{self.args}")


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Exists:
    variables: tuple[str, ...]
    body: "Formula"


Formula = Atom | And | Exists


def cell_variable(i: int, j: int, width: int) -> str:
    """Row-major name of cell (i, j), 1-based: t1 is the top-left cell."""
    return f"t{(i - 1) * width + j}"


def emit_formula(k: int, l: int, with_seed: bool = False) -> Exists:
    if k < 1 or l < 1:
        raise ValueError("height and width must be at least 1")
    v = lambda i, j: cell_variable(i, j, l)  # noqa: E731
    atoms = [Atom("H", (v(i, j), v(i, j + 1))) for i in range(1, k + 1) for j in range(1, l)]
    atoms += [Atom("V", (v(i, j), v(i + 1, j))) for i in range(1, k) for j in range(1, l + 1)]
    atoms += [Atom("LW", (v(i, 1),)) for i in range(1, k + 1)]
    atoms += [Atom("RW", (v(i, l),)) for i in range(1, k + 1)]
    atoms += [Atom("TW", (v(1, j),)) for j in range(1, l + 1)]
    atoms += [Atom("BW", (v(k, j),)) for j in range(1, l + 1)]
    if with_seed:
        atoms.append(Atom("SEED", (v(1, 1),)))
    variables = tuple(v(i, j) for i in range(1, k + 1) for j in range(1, l + 1))
    return Exists(variables, And(tuple(atoms)))


def node_count(f: Formula) -> int:
    if isinstance(f, Atom):
        return 1 + len(f.args)
    if isinstance(f, And):
        return 1 + sum(node_count(p) for p in f.parts)
    return 1 + len(f.variables) + node_count(f.body)


def format_formula(f: Formula) -> str:
    """S-expression text, e.g. ``(exists (t1) (and (LW t1) (RW t1)))``."""
    if isinstance(f, Atom):
        return "(" + " ".join((f.pred,) + f.args) + ")"
    if isinstance(f, And):
        return "(and " + " ".join(format_formula(p) for p in f.parts) + ")"
    return f"(exists ({' '.join(f.variables)}) {format_formula(f.body)})"


def parse_formula(text: str) -> Formula:
    tokens = re.findall(r"[()]|[^\s()]+", text)

    def expect(tok, i):
        if i >= len(tokens) or tokens[i] != tok:
            found = tokens[i] if i < len(tokens) else "end of input"
            raise ValueError(f"expected {tok!r}, found {found!r}")
        return i + 1

    def sexp(i):
        i = expect("(", i)
        if i >= len(tokens):
            raise ValueError("unexpected end of input")
        head = tokens[i]
        i += 1
        if head == "exists":
            i = expect("(", i)
            names = []
            while i < len(tokens) and tokens[i] not in "()":
                names.append(tokens[i])
                i += 1
            i = expect(")", i)
            body, i = sexp(i)
            return Exists(tuple(names), body), expect(")", i)
        if head == "and":
            parts = []
            while i < len(tokens) and tokens[i] == "(":
                p, i = sexp(i)
                parts.append(p)
            return And(tuple(parts)), expect(")", i)
        args = []
        while i < len(tokens) and tokens[i] not in "()":
            args.append(tokens[i])
            i += 1
        return Atom(head, tuple(args)), expect(")", i)

    f, i = sexp(0)
    if i != len(tokens):
        raise ValueError("trailing input after formula")
    return f


def _flatten(f: Formula, variables: list[str], atoms: list[Atom]) -> None:
    if isinstance(f, Exists):
        variables.extend(f.variables)
        _flatten(f.body, variables, atoms)
    elif isinstance(f, And):
        for p in f.parts:
            _flatten(p, variables, atoms)
    else:
        atoms.append(f)


def _holds(atom: Atom, env: dict[str, TileType], seed: TileType | None) -> bool:
    a = [env[x] for x in atom.args]
    match atom.pred:
        case "H":
            return a[0].right == a[1].left
        case "V":
            return a[0].bottom == a[1].top
        case "LW":
            return a[0].left == WHITE
        case "RW":
            return a[0].right == WHITE
        case "TW":
            return a[0].top == WHITE
        case "BW":
            return a[0].bottom == WHITE
        case "SEED":
            return a[0] == seed


def evaluate_formula(f: Formula, tile_set: TileSet, seed: TileType | None = None) -> bool:
    """Model-check an existential conjunction over the tiles of ``tile_set``.

    Variables range over tile types.  Each atom is tested as soon as its
    last variable (in quantifier order) is bound.
    """
    variables: list[str] = []
    atoms: list[Atom] = []
    _flatten(f, variables, atoms)
    order = {x: n for n, x in enumerate(variables)}
    free = {x for a in atoms for x in a.args} - order.keys()
    if free:
        raise ValueError(f"free variables: {sorted(free)}")
    if seed is None and any(a.pred == "SEED" for a in atoms):
        raise ValueError("formula mentions SEED but no seed tile was given")
    due: list[list[Atom]] = [[] for _ in variables]
    for a in atoms:
        due[max(order[x] for x in a.args)].append(a)
    tiles = list(tile_set)
    env: dict[str, TileType] = {}

    def bind(n: int) -> bool:
        if n == len(variables):
            return True
        for t in tiles:
            env[variables[n]] = t
            if all(_holds(a, env, seed) for a in due[n]) and bind(n + 1):
                return True
        env.pop(variables[n], None)
        return False

    return bind(0)
