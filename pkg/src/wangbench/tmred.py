"""Normalized Turing machines and their compilation to tile sets.

A normalized machine alternates between two state sets: from a state in
Q the head moves right or stays and the next state is in Q'; from Q' it
moves left or stays and goes back to Q.  The initial state is in Q', the
accepting state qf is in Q and shuttles with its copy qf' in Q' without
touching the tape.

In the compiled tile set row i's bottom colors spell configuration i-1.
Configurations with an even index have their state in Q' and carry
primed symbols; odd ones are unprimed.  The last row is the closing row
(tops blank' or (qf', blank'), bottoms white), so an H-row tiling needs
configuration H-2 to be qf' over a blank tape, which forces H to be even.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import WHITE, TileSet, TileType, Tiling, TilingInstance, WangError

MOVES = ("L", "R", "S")
PRIME = "'"
RESERVED = re.compile(r"[\s,#]")


@dataclass(frozen=True)
class Transition:
    state: str
    read: str
    write: str
    move: str
    next_state: str

    def __str__(self):
        return f"{self.state} {self.read} -> {self.write} {self.move} {self.next_state}"


@dataclass(frozen=True)
class TMDescription:
    """A machine as written, before the normal-form checks."""

    states_q: tuple[str, ...]
    states_qprime: tuple[str, ...]
    initial: str
    final: str
    transitions: tuple[Transition, ...]
    blank: str = "_"
    final_copy: str | None = None
    alphabet: tuple[str, ...] = ()


@dataclass(frozen=True)
class NormalizedTM:
    states_q: frozenset[str]
    states_qprime: frozenset[str]
    initial: str
    final: str
    final_copy: str
    blank: str
    alphabet: tuple[str, ...]
    transitions: tuple[Transition, ...]
    description: TMDescription = field(compare=False, repr=False)

    # condition 5 of the normal form is a property of runs
    runtime_obligations: tuple[str, ...] = ("5: the tape is blank whenever qf is reached",)

    def applicable(self, state: str, symbol: str) -> list[Transition]:
        return [t for t in self.transitions if t.state == state and t.read == symbol]

    @property
    def deterministic(self) -> bool:
        keys = [(t.state, t.read) for t in self.transitions]
        return len(keys) == len(set(keys))

    def primed(self, state: str) -> bool:
        return state in self.states_qprime


class NotNormalized(WangError):
    def __init__(self, violations: Sequence[tuple[str, str]]):
        self.violations = tuple(violations)
        super().__init__("; ".join(f"condition {c}: {msg}" for c, msg in self.violations))


def check_normalized(desc: TMDescription) -> NormalizedTM:
    """Check the normal form and return the machine, or raise NotNormalized
    listing every violation as (condition, message).  Condition "0" covers
    naming and well-formedness."""
    v: list[tuple[str, str]] = []
    q, qp = set(desc.states_q), set(desc.states_qprime)
    states = q | qp
    for s in q & qp:
        v.append(("0", f"state {s} is in both Q and Q'"))
    symbols = set(desc.alphabet) | {desc.blank}
    symbols |= {t.read for t in desc.transitions} | {t.write for t in desc.transitions}
    for name in sorted(states | symbols):
        if name == WHITE or not name or RESERVED.search(name):
            v.append(("0", f"name {name!r} is reserved or contains ',', '#' or whitespace"))
    for s in sorted(symbols):
        if PRIME in s:
            v.append(("0", f"symbol {s!r} contains a prime"))
    for s in sorted(symbols & states):
        v.append(("0", f"{s!r} is both a state and a symbol"))
    for t in desc.transitions:
        if t.state not in states or t.next_state not in states:
            v.append(("0", f"transition {t} uses an undeclared state"))
        if t.move not in MOVES:
            v.append(("0", f"transition {t} has move {t.move!r}, expected L, R or S"))

    if desc.initial not in qp:
        v.append(("1", f"initial state {desc.initial} is not in Q'"))
    for t in desc.transitions:
        if t.state in q and (t.next_state not in qp or t.move not in ("R", "S")):
            v.append(("2", f"transition {t} leaves Q but does not go to Q' moving right or staying"))
        if t.state in qp and (t.next_state not in q or t.move not in ("L", "S")):
            v.append(("3", f"transition {t} leaves Q' but does not go to Q moving left or staying"))
    if desc.final not in q:
        v.append(("4", f"final state {desc.final} is not in Q"))

    final_copy = desc.final_copy
    if final_copy is None:
        cands = [p for p in sorted(qp)
                 if Transition(desc.final, desc.blank, desc.blank, "S", p) in desc.transitions
                 and Transition(p, desc.blank, desc.blank, "S", desc.final) in desc.transitions]
        final_copy = cands[0] if len(cands) == 1 else None
        if final_copy is None:
            v.append(("6", f"no unique copy qf' of {desc.final} with blank-preserving "
                           f"staying transitions in both directions"))
    else:
        if final_copy not in qp:
            v.append(("6", f"final copy {final_copy} is not in Q'"))
        for t in (Transition(desc.final, desc.blank, desc.blank, "S", final_copy),
                  Transition(final_copy, desc.blank, desc.blank, "S", desc.final)):
            if t not in desc.transitions:
                v.append(("6", f"missing shuttle transition {t}"))
    if v:
        raise NotNormalized(v)
    alphabet = tuple(dict.fromkeys([desc.blank, *desc.alphabet,
                                    *(s for t in desc.transitions for s in (t.read, t.write))]))
    return NormalizedTM(frozenset(q), frozenset(qp), desc.initial, desc.final, final_copy,
                        desc.blank, alphabet, tuple(dict.fromkeys(desc.transitions)), desc)


# ---------------------------------------------------------------- running

@dataclass(frozen=True)
class TMConfig:
    tape: tuple[str, ...]
    head: int  # 1-based
    state: str

    def __str__(self):
        cells = [f"[{s}]" if i == self.head else s for i, s in enumerate(self.tape, 1)]
        return f"{self.state}: {' '.join(cells)}"


def initial_config(tm: NormalizedTM, word: Sequence[str], cells: int) -> TMConfig:
    word = tuple(word)
    if len(word) > cells:
        raise ValueError(f"input of length {len(word)} does not fit in {cells} cells")
    return TMConfig(word + (tm.blank,) * (cells - len(word)), 1, tm.initial)


def successors(tm: NormalizedTM, c: TMConfig) -> list[tuple[Transition, TMConfig]]:
    """All one-step successors that keep the head on the tape."""
    out = []
    for t in tm.applicable(c.state, c.tape[c.head - 1]):
        head = c.head + {"L": -1, "R": 1, "S": 0}[t.move]
        if not 1 <= head <= len(c.tape):
            continue
        tape = c.tape[:c.head - 1] + (t.write,) + c.tape[c.head:]
        out.append((t, TMConfig(tape, head, t.next_state)))
    return out


@dataclass(frozen=True)
class SimResult:
    outcome: str  # "accepted", "stuck", "running" or "violation"
    step: int
    trace: tuple[TMConfig, ...]
    reason: str = ""

    @property
    def accepted(self) -> bool:
        return self.outcome == "accepted"


class NondeterministicMachine(WangError):
    pass


def simulate(tm: NormalizedTM, word: Sequence[str], max_steps: int, max_cells: int) -> SimResult:
    """Run a deterministic machine until it reaches qf, gets stuck or
    exhausts ``max_steps``.  Reaching qf over a non-blank tape breaks the
    normal form and is reported as a "violation"."""
    if max_steps < 0 or max_cells < 1:
        raise ValueError("bounds must be positive")
    c = initial_config(tm, word, max_cells)
    trace = [c]
    for step in range(0, max_steps + 1):
        if c.state == tm.final:
            if any(s != tm.blank for s in c.tape):
                return SimResult("violation", step, tuple(trace), "condition 5: qf reached on a non-blank tape")
            return SimResult("accepted", step, tuple(trace))
        if step == max_steps:
            break
        options = tm.applicable(c.state, c.tape[c.head - 1])
        if len(options) > 1:
            raise NondeterministicMachine(f"{len(options)} transitions apply in {c}; use successors()")
        if not options:
            return SimResult("stuck", step, tuple(trace), f"no transition for ({c.state}, {c.tape[c.head - 1]})")
        t = options[0]
        nxt = successors(tm, c)
        if not nxt:
            where = "left of cell 1" if t.move == "L" else f"beyond cell {max_cells}"
            return SimResult("stuck", step, tuple(trace), f"{t} moves the head {where}")
        c = nxt[0][1]
        trace.append(c)
    return SimResult("running", max_steps, tuple(trace))


def closes_at_height(tm: NormalizedTM, result: SimResult, height: int) -> bool:
    """Does an accepted run, continued by the qf/qf' shuttle, sit in qf'
    at configuration height-2, so that row ``height`` can close?"""
    if not result.accepted or height < 2:
        return False
    # the shuttle may already have started before the first qf
    start = result.step
    blank = (tm.blank,) * len(result.trace[0].tape)
    while start > 0 and result.trace[start - 1].state in (tm.final, tm.final_copy) \
            and result.trace[start - 1].tape == blank:
        start -= 1
    target = height - 2
    # qf' only ever sits at even configuration indices
    return target >= start and target % 2 == 0


def accepts_in_rectangle(tm: NormalizedTM, word: Sequence[str], height: int, width: int) -> bool:
    """Some run has configuration height-2 equal to qf' on a blank tape,
    with the head never leaving ``width`` cells.  Works for nondeterministic
    machines by tracking the set of configurations at each step."""
    if len(word) > width or height < 2:
        return False
    layer = {initial_config(tm, word, width)}
    for _ in range(height - 2):
        layer = {d for c in layer for _, d in successors(tm, c)}
        if not layer:
            return False
    blank = (tm.blank,) * width
    return any(c.state == tm.final_copy and c.tape == blank for c in layer)


def accepts_any_height(tm: NormalizedTM, word: Sequence[str], width: int) -> bool:
    """Some run within ``width`` cells reaches qf' on a blank tape at an
    even configuration index (all configurations are finite, so BFS ends)."""
    if len(word) > width:
        return False
    start = (initial_config(tm, word, width), 0)
    seen, queue = {start}, deque([start])
    blank = (tm.blank,) * width
    while queue:
        c, parity = queue.popleft()
        if parity == 0 and c.state == tm.final_copy and c.tape == blank:
            return True
        for _, d in successors(tm, c):
            key = (d, 1 - parity)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return False


# ---------------------------------------------------------------- colors

def sym(a: str, primed: bool) -> str:
    return a + PRIME if primed else a


def pair(state: str, a: str, primed: bool) -> str:
    return f"{state},{sym(a, primed)}"


def pos(k: int) -> str:
    return f"#{k}"


def _white_or(c):
    return WHITE if c is None else c


def compile_tileset(tm: NormalizedTM, word: Sequence[str], width: int,
                    height: int | None | str = "square") -> TilingInstance:
    """Tile set and seed encoding runs of ``tm`` on ``word``.

    ``height`` defaults to ``width`` (the n x n square); pass None for
    arbitrary height.
    """
    word = tuple(word)
    if width < len(word):
        raise ValueError(f"width {width} is smaller than the input length {len(word)}")
    if width < 1:
        raise ValueError("width must be >= 1")
    for a in word:
        if PRIME in a or RESERVED.search(a) or a == WHITE or a in tm.states_q | tm.states_qprime:
            raise ValueError(f"input symbol {a!r} is not a valid symbol")
    alphabet = tuple(dict.fromkeys(tm.alphabet + word))
    Q = sorted(tm.states_q)
    QP = sorted(tm.states_qprime)
    W = WHITE
    tiles: list[TileType] = []

    # seed row
    if word:
        for k, a in enumerate(word, 1):
            left = W if k == 1 else pos(k)
            right = pos(k + 1) if k < len(word) else W
            bottom = pair(tm.initial, a, True) if k == 1 else sym(a, True)
            tiles.append(TileType(left, W, right, bottom))
    else:
        tiles.append(TileType(W, W, W, pair(tm.initial, tm.blank, True)))
    seed = tiles[0]
    tiles.append(TileType(W, W, W, sym(tm.blank, True)))

    for a in alphabet:
        tiles.append(TileType(W, a, W, sym(a, True)))
        tiles.append(TileType(W, sym(a, True), W, a))
    for a in alphabet:
        for p in QP:
            tiles.append(TileType(p, a, W, pair(p, a, True)))
        for q in Q:
            tiles.append(TileType(W, sym(a, True), q, pair(q, a, False)))
    for t in tm.transitions:
        src_primed = tm.primed(t.state)
        top = pair(t.state, t.read, src_primed)
        if t.move == "R":
            tiles.append(TileType(W, top, t.next_state, sym(t.write, True)))
        elif t.move == "L":
            tiles.append(TileType(t.next_state, top, W, t.write))
        else:
            tiles.append(TileType(W, top, W, pair(t.next_state, t.write, not src_primed)))
    tiles.append(TileType(W, sym(tm.blank, True), W, W))
    tiles.append(TileType(W, pair(tm.final_copy, tm.blank, True), W, W))

    if height == "square":
        height = width
    return TilingInstance(TileSet(tiles), width, height, seed, n=width)


# ---------------------------------------------------------------- tilings <-> traces

class TraceDecodeError(WangError):
    def __init__(self, row: int, cells: Sequence[int], message: str):
        self.row, self.cells = row, tuple(cells)
        super().__init__(f"row {row}, cells {list(self.cells)}: {message}")


def _decode_color(tm: NormalizedTM, color: str):
    """(state or None, symbol, primed) for a bottom color."""
    if "," in color:
        state, s = color.split(",", 1)
    else:
        state, s = None, color
    primed = s.endswith(PRIME)
    return state, s[:-1] if primed else s, primed


def tiling_to_trace(instance: TilingInstance, tiling: Tiling, tm: NormalizedTM) -> list[TMConfig]:
    """Read one configuration per row from the bottom colors.

    Decoding stops at the closing row (all-white bottoms); rows after it
    are rejected.  Each row must carry exactly one head, primed symbols on
    even configuration indices and a state from the matching set.
    """
    configs = []
    closed = None
    for i, row in enumerate(tiling.rows, 1):
        bottoms = [t.bottom for t in row]
        if closed is not None:
            raise TraceDecodeError(i, range(1, len(row) + 1), f"row follows the closing row {closed}")
        if all(b == WHITE for b in bottoms):
            closed = i
            continue
        index = i - 1
        want_primed = index % 2 == 0
        tape, heads, state = [], [], None
        for j, b in enumerate(bottoms, 1):
            if b == WHITE or b.startswith("#"):
                raise TraceDecodeError(i, [j], f"bottom color {b!r} is not a tape cell")
            s, a, primed = _decode_color(tm, b)
            if primed != want_primed:
                raise TraceDecodeError(i, [j], f"prime parity broken: configuration {index} "
                                               f"should be {'primed' if want_primed else 'unprimed'}")
            if s is not None:
                heads.append(j)
                state = s
                if tm.primed(s) != want_primed:
                    raise TraceDecodeError(i, [j], f"state {s} is on the wrong side of Q/Q'")
            tape.append(a)
        if not heads:
            raise TraceDecodeError(i, range(1, len(row) + 1), "no head in this row")
        if len(heads) > 1:
            raise TraceDecodeError(i, heads, "more than one head in this row")
        configs.append(TMConfig(tuple(tape), heads[0], state))
    return configs


def _step_transition(tm: NormalizedTM, a: TMConfig, b: TMConfig) -> Transition:
    for t, c in successors(tm, a):
        if c == b:
            return t
    raise ValueError(f"no transition leads from {a} to {b}")


def trace_to_tiling(instance: TilingInstance, trace: Sequence[TMConfig], tm: NormalizedTM,
                    height: int | None = None) -> Tiling:
    """Lay a run out as rows, pad an accepted run with the shuttle and close.

    ``height`` defaults to the instance height, or to the smallest height
    that fits when the instance height is arbitrary.
    """
    if not trace:
        raise ValueError("empty trace")
    W = instance.width
    if any(len(c.tape) != W for c in trace):
        raise ValueError(f"trace tapes must have exactly {W} cells")
    last = trace[-1]
    blank = (tm.blank,) * W
    if last.state not in (tm.final, tm.final_copy) or last.tape != blank:
        raise ValueError("cannot close the bottom: the run does not end in qf over a blank tape")
    configs = list(trace)
    H = height if height is not None else instance.height
    if H is None:
        H = len(configs) + 1
        if configs[-1].state == tm.final:
            H += 1
    need = H - 2  # index of the configuration above the closing row
    shuttle = (tm.final, tm.final_copy)
    while len(configs) - 1 > need and len(configs) > 1 and configs[-2].state in shuttle \
            and configs[-2].tape == blank:
        configs.pop()  # surplus shuttle steps
    if need < len(configs) - 1:
        raise ValueError(f"trace of {len(configs)} configurations does not fit in {H} rows")
    while len(configs) - 1 < need:
        c = configs[-1]
        nxt = tm.final_copy if c.state == tm.final else tm.final
        configs.append(TMConfig(c.tape, c.head, nxt))
    if configs[need].state != tm.final_copy:
        raise ValueError(f"height {H} has the wrong parity: qf' cannot sit at configuration {need}")

    rows = [_seed_row(instance, tm, configs[0])]
    for k in range(1, len(configs)):
        a, b = configs[k - 1], configs[k]
        rows.append(_transition_row(tm, a, b, _step_transition(tm, a, b), primed_top=(k - 1) % 2 == 0))
    rows.append([TileType(WHITE, _cell_color(tm, configs[-1], j, True), WHITE, WHITE)
                 for j in range(1, W + 1)])
    return Tiling(rows)


def _cell_color(tm, c: TMConfig, j: int, primed: bool) -> str:
    a = c.tape[j - 1]
    return pair(c.state, a, primed) if j == c.head else sym(a, primed)


def _seed_row(instance: TilingInstance, tm: NormalizedTM, c0: TMConfig) -> list[TileType]:
    by_bottom: dict[str, list[TileType]] = {}
    for t in instance.tile_set:
        if t.top == WHITE and t.bottom != WHITE:
            by_bottom.setdefault(t.bottom, []).append(t)
    row = [instance.seed]
    for j in range(2, instance.width + 1):
        color = _cell_color(tm, c0, j, True)
        options = [t for t in by_bottom.get(color, []) if t.left == row[-1].right]
        if len(options) != 1:
            raise ValueError(f"cannot lay out the seed row at column {j}")
        row.append(options[0])
    return row


def _transition_row(tm, a: TMConfig, b: TMConfig, t: Transition, primed_top: bool) -> list[TileType]:
    W = len(a.tape)
    row = []
    for j in range(1, W + 1):
        top = _cell_color(tm, a, j, primed_top)
        bottom = _cell_color(tm, b, j, not primed_top)
        left = right = WHITE
        if t.move == "R":
            if j == a.head:
                right = t.next_state
            elif j == a.head + 1:
                left = t.next_state
        elif t.move == "L":
            if j == a.head:
                left = t.next_state
            elif j == a.head - 1:
                right = t.next_state
        row.append(TileType(left, top, right, bottom))
    return row


# ---------------------------------------------------------------- text format

def parse_tm(text: str) -> TMDescription:
    """Read the line format: header lines ``Q:``, ``Q':``, ``init:``,
    ``final:``, optional ``final':``, ``blank:``, ``alphabet:``, then one
    ``q a -> b MOVE q'`` per line.  ``;`` starts a comment."""
    headers: dict[str, list[str]] = {}
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"(Q|Q'|init|final|final'|blank|alphabet)\s*:\s*(.*)", line)
        if m:
            headers[m.group(1)] = m.group(2).split()
            continue
        parts = line.split()
        if len(parts) != 6 or parts[2] != "->":
            raise ValueError(f"line {lineno}: expected 'q a -> b MOVE q2', got {raw!r}")
        q, a, _, b, move, q2 = parts
        transitions.append(Transition(q, a, b, move, q2))
    for key in ("Q", "Q'", "init", "final"):
        if key not in headers:
            raise ValueError(f"missing header {key!r}")
    for key in ("init", "final", "final'", "blank"):
        if key in headers and len(headers[key]) != 1:
            raise ValueError(f"header {key!r} takes exactly one name")
    return TMDescription(tuple(headers["Q"]), tuple(headers["Q'"]), headers["init"][0],
                         headers["final"][0], tuple(transitions),
                         headers.get("blank", ["_"])[0],
                         headers["final'"][0] if "final'" in headers else None,
                         tuple(headers.get("alphabet", ())))


def format_tm(desc: TMDescription) -> str:
    lines = [f"Q: {' '.join(desc.states_q)}", f"Q': {' '.join(desc.states_qprime)}",
             f"init: {desc.initial}", f"final: {desc.final}"]
    if desc.final_copy is not None:
        lines.append(f"final': {desc.final_copy}")
    lines.append(f"blank: {desc.blank}")
    if desc.alphabet:
        lines.append(f"alphabet: {' '.join(desc.alphabet)}")
    lines += [str(t) for t in desc.transitions]
    return "\n".join(lines) + "\n"


def load_tm(text: str) -> NormalizedTM:
    return check_normalized(parse_tm(text))


def tm_from_transitions(q: Iterable[str], qprime: Iterable[str], initial: str,
                        transitions: Iterable[tuple], *, final: str = "qf",
                        final_copy: str = "qf'", blank: str = "_") -> NormalizedTM:
    """Build a machine and add the qf/qf' shuttle on the blank symbol."""
    ts = [Transition(*t) for t in transitions]
    ts += [Transition(final, blank, blank, "S", final_copy),
           Transition(final_copy, blank, blank, "S", final)]
    desc = TMDescription(tuple(dict.fromkeys([*q, final])), tuple(dict.fromkeys([*qprime, final_copy])),
                         initial, final, tuple(dict.fromkeys(ts)), blank, final_copy)
    return check_normalized(desc)
