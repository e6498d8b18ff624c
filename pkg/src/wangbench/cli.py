"""Command-line front end: ``wangbench <subcommand> ...``.

Exit status is 0 for yes/pass, 1 for no/fail and 2 for inconclusive runs
and errors.  ``--json`` prints one machine-readable object on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .core import DEFAULT_BUDGET, BudgetExceeded, TilingInstance, WangError
from .det import NondeterministicAtRuntime, boustrophedon_complete, detect_deterministic
from .fo import emit_formula, evaluate_formula, format_formula, parse_formula
from .game import PlayerSequence, solve_game, verify_strategy
from .gen import FAMILIES, gen_instance
from .render import RenderSpec, render
from .solve import solve
from .tmred import compile_tileset, load_tm, simulate
from .width1 import graph_to_tiles, solve_line, tiles_to_graph, undirected_reachable

YES, NO, INCONCLUSIVE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _tileset_and_seed(args):
    """Tile set from --tileset; the seed comes from --seed-index, else from the file."""
    tiles, seed = formats.parse_tileset(_read(args.tileset))
    if getattr(args, "seed_free", False):
        return tiles, None
    if args.seed_index is not None:
        if not 0 <= args.seed_index < len(tiles):
            raise UsageError(f"--seed-index {args.seed_index} is out of range (0..{len(tiles) - 1})")
        seed = tiles.tiles[args.seed_index]
    return tiles, seed


def _dimensions(args):
    """Width and height from the flags, falling back to an instance file's own."""
    d = json.loads(_read(args.tileset))
    width = args.width if args.width is not None else d.get("width")
    if args.any_height:
        height = None
    elif args.height is not None:
        height = args.height
    elif "height" in d:
        height = d["height"]
    else:
        raise UsageError("give --height H or --any-height")
    if width is None:
        raise UsageError("give --width W")
    return width, height, d.get("n", 0)


def _instance(args) -> TilingInstance:
    tiles, seed = _tileset_and_seed(args)
    width, height, n = _dimensions(args)
    return TilingInstance(tiles, width, height, seed, n or width)


def _word(text: str) -> list[str]:
    return text.split() if " " in text else list(text)


# ------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    inst = _instance(args)
    res = solve(inst, args.budget)
    if res.exists and args.witness:
        _write(args.witness, formats.dump_tiling(res.witness))
    h = res.witness.height if res.witness else None
    _emit(args, {"exists": res.exists, "height": h, "rows_explored": res.rows_explored,
                 "states_memoized": res.states_memoized},
          ("yes" if res.exists else "no")
          + (f" (height {h})" if h is not None and inst.height is None else "")
          + f"  rows explored: {res.rows_explored}")
    return YES if res.exists else NO


def cmd_det_check(args) -> int:
    tiles, _ = formats.parse_tileset(_read(args.tileset))
    cert = detect_deterministic(tiles)
    payload = {"deterministic": cert.deterministic}
    if cert.deterministic:
        payload["one"] = sorted(cert.partition.ones())
        text = "deterministic"
        if args.explain:
            text += "\nclass ONE: " + " ".join(sorted(cert.partition.ones()))
            rest = sorted(c for c in cert.partition.class_of if c not in cert.partition.ones())
            text += "\nclass TWO: " + " ".join(rest)
    else:
        payload["counterexample"] = cert.counterexample.describe()
        text = "not deterministic"
        if args.explain:
            text += "\n" + cert.counterexample.describe()
    _emit(args, payload, text)
    return YES if cert.deterministic else NO


def cmd_complete(args) -> int:
    tiles, seed = _tileset_and_seed(args)
    if seed is None:
        raise UsageError("complete needs a seed (--seed-index or a seed in the file)")
    cert = detect_deterministic(tiles)
    if not cert.deterministic:
        _emit(args, {"completed": None, "reason": cert.counterexample.describe()},
              "tile set is not deterministic: " + cert.counterexample.describe())
        return INCONCLUSIVE
    try:
        res = boustrophedon_complete(tiles, cert, seed, args.height, args.width)
    except NondeterministicAtRuntime as e:
        _emit(args, {"completed": None, "reason": str(e)}, f"inconclusive: {e}")
        return INCONCLUSIVE
    if res.exists and args.out:
        _write(args.out, formats.dump_tiling(res.witness))
    _emit(args, {"completed": res.exists, "cells_filled": res.cells_filled,
                 "stuck_at": res.stuck_at, "backtracks": res.backtracks},
          "completed" if res.exists else f"no tiling: stuck at cell {res.stuck_at}")
    return YES if res.exists else NO


def _params(pairs) -> dict[str, int]:
    out = {}
    for p in pairs or ():
        name, _, value = p.partition("=")
        if not name or not value.lstrip("-").isdigit():
            raise UsageError(f"--param expects name=integer, got {p!r}")
        out[name] = int(value)
    return out


def cmd_game(args) -> int:
    inst = _instance(args)
    seq = PlayerSequence.parse(args.seq)
    params = _params(args.param)
    n = args.n if args.n is not None else inst.width
    res = solve_game(inst, seq, n, objective=args.objective, budget=args.budget, params=params)
    payload = {"exists": res.exists, "states": res.states}
    text = ("E wins" if res.exists else "A wins") + f"  states: {res.states}"
    if res.exists:
        if args.strategy:
            _write(args.strategy, formats.dump_strategy(res.strategy))
        if args.verify:
            v = verify_strategy(inst, seq, res.strategy, n, objective=args.objective,
                                adversary_budget=args.budget, params=params)
            payload["verified"] = v.ok
            text += "\nstrategy verified" if v.ok else f"\nstrategy FAILED: {v.reason}"
            if not v.ok:
                _emit(args, payload, text)
                return NO
    _emit(args, payload, text)
    return YES if res.exists else NO


def cmd_compile_tm(args) -> int:
    tm = load_tm(_read(args.tm))
    height = None if args.any_height else (args.height if args.height is not None else "square")
    inst = compile_tileset(tm, _word(args.input), args.width, height)
    _write(args.out, formats.dump_instance(inst))
    if args.out not in (None, "-"):
        _emit(args, {"tiles": len(inst.tile_set), "width": inst.width, "height": inst.height},
              f"{len(inst.tile_set)} tiles, width {inst.width}, "
              f"height {'any' if inst.height is None else inst.height}")
    return YES


def cmd_simulate(args) -> int:
    tm = load_tm(_read(args.tm))
    word = _word(args.input)
    cells = args.max_cells if args.max_cells is not None else max(len(word), 1) + args.max_steps
    res = simulate(tm, word, args.max_steps, cells)
    lines = [f"{k:>4}  {c.state:<6} {' '.join(c.tape)}  head {c.head}"
             for k, c in enumerate(res.trace)]
    lines.append(f"{res.outcome} after {res.step} steps" + (f": {res.reason}" if res.reason else ""))
    _emit(args, {"outcome": res.outcome, "steps": res.step, "reason": res.reason,
                 "trace": [{"state": c.state, "tape": list(c.tape), "head": c.head}
                           for c in res.trace]},
          "\n".join(lines))
    return {"accepted": YES, "violation": INCONCLUSIVE}.get(res.outcome, NO)


def cmd_reduce_graph(args) -> int:
    g = formats.parse_graph(_read(args.input_file), directed=True)
    inst = graph_to_tiles(g)
    _write(args.out, formats.dump_instance(inst))
    if args.out not in (None, "-"):
        ok = solve_line(inst.tile_set, inst.seed, inst.height)
        _emit(args, {"tiles": len(inst.tile_set), "height": inst.height, "tileable": ok},
              f"{len(inst.tile_set)} tiles, height {inst.height}, "
              f"{'tileable' if ok else 'not tileable'}")
    return YES


def cmd_reduce_tiles(args) -> int:
    inst = formats.parse_instance(_read(args.input_file))
    g = tiles_to_graph(inst)
    _write(args.out, formats.format_graph(g))
    if args.out not in (None, "-"):
        ok = undirected_reachable(g)
        _emit(args, {"nodes": len(g.nodes), "edges": len(g.edges), "connected": ok},
              f"{len(g.nodes)} nodes, {len(g.edges)} edges, "
              f"source and target {'connected' if ok else 'not connected'}")
    return YES


def cmd_fo(args) -> int:
    _write(args.out, format_formula(emit_formula(args.height, args.width, args.seed)) + "\n")
    return YES


def cmd_fo_eval(args) -> int:
    tiles, seed = _tileset_and_seed(args)
    if args.formula:
        f = parse_formula(_read(args.formula))
    else:
        if args.height is None or args.width is None:
            raise UsageError("give --formula FILE or both --height and --width")
        f = emit_formula(args.height, args.width, args.seed)
    ok = evaluate_formula(f, tiles, seed)
    _emit(args, {"holds": ok}, "true" if ok else "false")
    return YES if ok else NO


def cmd_render(args) -> int:
    tiling = formats.parse_tiling(_read(args.tiling))
    legend = json.loads(_read(args.legend)) if args.legend else {}
    _write(args.out, render(tiling, RenderSpec(args.format, legend, args.cell_size)))
    return YES


def cmd_gen(args) -> int:
    g = gen_instance(args.family, args.n, args.k)
    _write(args.out, formats.dump_instance(g.instance))
    if g.sequence is not None:
        text = f"sequence: {g.sequence}  with " + ", ".join(
            f"{k}={v}" for k, v in {"n": args.n, **g.params}.items())
        print(text, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return YES


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON result object")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="search budget in row expansions (default %(default)s)")
    common.add_argument("--seed-index", type=int, default=None,
                        help="use tile number i (0-based) of the tile set as the seed")

    p = argparse.ArgumentParser(prog="wangbench", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    def shape(sp, height_required=False):
        sp.add_argument("--width", type=int)
        g = sp.add_mutually_exclusive_group(required=height_required)
        g.add_argument("--height", type=int)
        g.add_argument("--any-height", action="store_true")

    sp = cmd("solve", cmd_solve, "decide whether an instance can be tiled")
    sp.add_argument("--tileset", required=True)
    sp.add_argument("--seed-free", action="store_true", help="ignore any seed")
    shape(sp)
    sp.add_argument("--witness", help="write a tiling here when one exists")

    sp = cmd("det-check", cmd_det_check, "check the determinism condition on a tile set")
    sp.add_argument("--tileset", required=True)
    sp.add_argument("--explain", action="store_true")

    sp = cmd("complete", cmd_complete, "fill a rectangle by boustrophedon completion")
    sp.add_argument("--tileset", required=True)
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--width", type=int, required=True)
    sp.add_argument("--out", help="write the tiling here")

    sp = cmd("game", cmd_game, "solve a tiling game for a player sequence")
    sp.add_argument("--tileset", required=True)
    shape(sp)
    sp.add_argument("--seq", required=True, help='player sequence, e.g. "(EA)*"')
    sp.add_argument("--n", type=int, help="value of n in the sequence (default: the width)")
    sp.add_argument("--param", action="append", metavar="NAME=INT",
                    help="bind another length variable, e.g. k=2")
    sp.add_argument("--objective", choices=("tile", "block"), default="tile")
    sp.add_argument("--strategy", help="write E's strategy here when E wins")
    sp.add_argument("--verify", action="store_true", help="check the strategy against every A play")

    sp = cmd("compile-tm", cmd_compile_tm, "compile a machine and input into a tiling instance")
    sp.add_argument("--tm", required=True)
    sp.add_argument("--input", required=True, help="input word; one symbol per character")
    sp.add_argument("--width", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--height", type=int, help="default: the width")
    g.add_argument("--any-height", action="store_true")
    sp.add_argument("--out")

    sp = cmd("simulate", cmd_simulate, "run a machine")
    sp.add_argument("--tm", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--max-steps", type=int, required=True)
    sp.add_argument("--max-cells", type=int)

    sp = cmd("reduce-graph", cmd_reduce_graph, "directed graph to width-1 tiling instance")
    sp.add_argument("--in", dest="input_file", required=True)
    sp.add_argument("--out")

    sp = cmd("reduce-tiles", cmd_reduce_tiles, "width-1 instance to layered undirected graph")
    sp.add_argument("--in", dest="input_file", required=True)
    sp.add_argument("--out")

    sp = cmd("fo", cmd_fo, "print the first-order formula for a fixed rectangle")
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--width", type=int, required=True)
    sp.add_argument("--seed", action="store_true", help="add the SEED atom")
    sp.add_argument("--out")

    sp = cmd("fo-eval", cmd_fo_eval, "evaluate a formula over a tile set")
    sp.add_argument("--tileset", required=True)
    sp.add_argument("--formula", help="formula file; otherwise emitted from --height/--width")
    sp.add_argument("--height", type=int)
    sp.add_argument("--width", type=int)
    sp.add_argument("--seed", action="store_true", help="add the SEED atom")

    sp = cmd("render", cmd_render, "draw a tiling as ASCII or SVG")
    sp.add_argument("--tiling", required=True)
    sp.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    sp.add_argument("--cell-size", type=int, default=40)
    sp.add_argument("--legend", help="JSON object mapping colors to codes or fills")
    sp.add_argument("--out")

    sp = cmd("gen", cmd_gen, "generate a benchmark instance")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return INCONCLUSIVE
    except (UsageError, WangError, ValueError, KeyError, IndexError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
