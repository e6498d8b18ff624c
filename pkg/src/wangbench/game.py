"""Row-alternation tiling games.

Rows are placed one at a time from the top; a player sequence says who
places each row.  Player E wins when the rectangle ends fully tiled, so
any play that stalls (the mover has no legal row) is lost by E.  With
arbitrary height E wins as soon as a placed row has an all-white bottom
and loses every infinite play.

Legal rows are horizontally valid, match the row above (or have a white
top and the seed in column 1 for row 1).  A white bottom is not part of
legality: it is checked when the play ends, so the owner of the last row
may spoil the tiling.

``objective="block"`` flips the goal: E then wins exactly when the play
does not end fully tiled.  Solving the swapped sequence with the block
objective gives the complement of the original game.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import DEFAULT_BUDGET, BudgetExceeded, TilingInstance
from .solve import RowState, start_rows, successor_rows

E, A = "E", "A"


# ---------------------------------------------------------------- lengths

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # one of "^", "+", "-", "*"
    lhs: "Expr"
    rhs: "Expr"


Expr = Num | Var | BinOp

_PREC = {"+": 1, "-": 1, "*": 2, "^": 3}


def eval_expr(e: Expr, env: Mapping[str, int]) -> int:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        if e.name not in env:
            raise ValueError(f"unbound length variable {e.name!r}")
        return env[e.name]
    a, b = eval_expr(e.lhs, env), eval_expr(e.rhs, env)
    if e.op == "^":
        if b > 64:
            raise OverflowError(f"length {a}^{b} is too large to play")
        return a ** b
    return {"+": a + b, "-": a - b, "*": a * b}[e.op]


def expr_text(e: Expr) -> str:
    """Text for an exponent; compound expressions other than towers of
    atoms are parenthesised."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if e.op == "^" and not (isinstance(e.lhs, BinOp)):
        return f"{expr_text(e.lhs)}^{expr_text(e.rhs)}"
    return "(" + _infix(e) + ")"


def _infix(e: Expr, parent: int = 0) -> str:
    if not isinstance(e, BinOp):
        return expr_text(e)
    p = _PREC[e.op]
    # "^" is right associative, the others left associative
    left = _infix(e.lhs, p + (1 if e.op == "^" else 0))
    right = _infix(e.rhs, p + (0 if e.op == "^" else 1))
    s = f"{left}{e.op}{right}"
    return f"({s})" if p < parent else s


# ---------------------------------------------------------------- sequences

@dataclass(frozen=True)
class Block:
    player: str
    length: Expr = Num(1)


@dataclass(frozen=True)
class Group:
    items: tuple["Item", ...]
    count: Expr = Num(1)


Item = Block | Group


@dataclass(frozen=True)
class PlayerSequence:
    """``prefix`` is played once, then ``repeat`` (if any) forever."""

    prefix: tuple[Item, ...] = ()
    repeat: tuple[Item, ...] | None = None

    def __post_init__(self):
        if not self.prefix and not self.repeat:
            raise ValueError("a player sequence needs a prefix or a repeated part")

    @classmethod
    def parse(cls, text: str) -> "PlayerSequence":
        return _Parser(text).sequence()

    def __str__(self) -> str:
        s = "".join(_item_text(i) for i in self.prefix)
        if self.repeat is not None:
            if len(self.repeat) == 1 and isinstance(self.repeat[0], Block) \
                    and self.repeat[0].length == Num(1):
                s += self.repeat[0].player + "*"
            else:
                s += "(" + "".join(_item_text(i) for i in self.repeat) + ")*"
        return s

    def swapped(self) -> "PlayerSequence":
        return PlayerSequence(_swap(self.prefix),
                              None if self.repeat is None else _swap(self.repeat))


def _swap(items):
    out = []
    for it in items:
        if isinstance(it, Block):
            out.append(Block(A if it.player == E else E, it.length))
        else:
            out.append(Group(_swap(it.items), it.count))
    return tuple(out)


def _item_text(it: Item) -> str:
    if isinstance(it, Block):
        base, n = it.player, it.length
    else:
        base, n = "(" + "".join(_item_text(i) for i in it.items) + ")", it.count
    return base if n == Num(1) else f"{base}^{expr_text(n)}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([EA∃∀])|([a-z][a-z0-9_]*)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str]] = []
        for m in _TOKEN.finditer(text):
            num, player, name, other = m.groups()
            if num:
                self.toks.append(("num", num))
            elif player:
                self.toks.append(("player", {"∃": E, "∀": A}.get(player, player)))
            elif name:
                self.toks.append(("name", name))
            elif other and not other.isspace():
                self.toks.append(("op", other))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else ("end", "")

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ValueError(f"bad player sequence {self.text!r}: expected {want}, got {tok[1] or 'end'}")
        self.pos += 1
        return tok

    def sequence(self) -> PlayerSequence:
        items = []
        repeat = None
        while self.peek()[0] != "end":
            it = self.item()
            if self.peek() == ("op", "*"):
                self.take()
                if self.peek()[0] != "end":
                    raise ValueError(f"bad player sequence {self.text!r}: '*' must close the sequence")
                repeat = it.items if isinstance(it, Group) and it.count == Num(1) else (it,)
                break
            items.append(it)
        return PlayerSequence(tuple(items), repeat)

    def item(self) -> Item:
        tok = self.peek()
        if tok[0] == "player":
            self.take()
            node: Item = Block(tok[1])
        elif tok == ("op", "("):
            self.take()
            inner = []
            while self.peek() != ("op", ")"):
                if self.peek()[0] == "end":
                    raise ValueError(f"bad player sequence {self.text!r}: unclosed '('")
                inner.append(self.item())
            self.take()
            if not inner:
                raise ValueError(f"bad player sequence {self.text!r}: empty group")
            node = Group(tuple(inner))
        else:
            raise ValueError(f"bad player sequence {self.text!r}: unexpected {tok[1] or 'end'}")
        if self.peek() == ("op", "^"):
            self.take()
            n = self.power()
            node = Block(node.player, n) if isinstance(node, Block) else Group(node.items, n)
        return node

    def power(self) -> Expr:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return BinOp("^", base, self.power())
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return Num(int(tok[1]))
        if tok[0] == "name":
            self.take()
            return Var(tok[1])
        if tok == ("op", "("):
            self.take()
            e = self.arith()
            self.take("op", ")")
            return e
        raise ValueError(f"bad player sequence {self.text!r}: expected a length, got {tok[1] or 'end'}")

    def arith(self, min_prec: int = 1) -> Expr:
        lhs = self.power()
        while self.peek()[0] == "op" and self.peek()[1] in "+-*" \
                and _PREC[self.peek()[1]] >= min_prec:
            op = self.take()[1]
            rhs = self.arith(_PREC[op] + 1)
            lhs = BinOp(op, lhs, rhs)
        return lhs


@dataclass(frozen=True)
class ResolvedSequence:
    """Concrete owners: ``prefix`` once, then ``cycle`` forever (if any)."""

    prefix: tuple[str, ...]
    cycle: tuple[str, ...] | None

    @property
    def length(self) -> int | None:
        return None if self.cycle else len(self.prefix)

    def owner(self, row: int) -> str:
        """Owner of 1-based ``row``."""
        if row < 1:
            raise ValueError("rows are numbered from 1")
        if row <= len(self.prefix):
            return self.prefix[row - 1]
        if not self.cycle:
            raise IndexError(f"row {row} is beyond the finite sequence of {len(self.prefix)} rows")
        return self.cycle[(row - 1 - len(self.prefix)) % len(self.cycle)]

    def phase(self, rows_placed: int) -> int:
        """Position of the next row, folded onto the cycle."""
        p = len(self.prefix)
        if rows_placed < p or not self.cycle:
            return rows_placed
        return p + (rows_placed - p) % len(self.cycle)

    def owner_at_phase(self, phase: int) -> str | None:
        if phase < len(self.prefix):
            return self.prefix[phase]
        if not self.cycle:
            return None
        return self.cycle[phase - len(self.prefix)]

    def next_phase(self, phase: int) -> int:
        p = len(self.prefix)
        if phase + 1 < p or not self.cycle:
            return phase + 1
        return p + (phase + 1 - p) % len(self.cycle)


MAX_RESOLVED_ROWS = 10**6


def _expand(items, env, out):
    for it in items:
        if isinstance(it, Block):
            k = eval_expr(it.length, env)
            if k < 1:
                raise ValueError(f"block {_item_text(it)} has length {k} < 1")
            out.extend([it.player] * k)
        else:
            k = eval_expr(it.count, env)
            if k < 0:
                raise ValueError(f"group {_item_text(it)} repeats {k} < 0 times")
            for _ in range(k):
                _expand(it.items, env, out)
        if len(out) > MAX_RESOLVED_ROWS:
            raise OverflowError("player sequence expands to too many rows")


def resolve_sequence(seq: PlayerSequence, n: int, **params: int) -> ResolvedSequence:
    """Bind ``n`` (and any other length variables) and expand the blocks."""
    if n < 1:
        raise ValueError("n must be >= 1")
    env = {"n": n, **params}
    prefix: list[str] = []
    _expand(seq.prefix, env, prefix)
    cycle = None
    if seq.repeat is not None:
        c: list[str] = []
        _expand(seq.repeat, env, c)
        cycle = tuple(c) or None
    if not prefix and not cycle:
        raise ValueError("player sequence resolves to no rows")
    return ResolvedSequence(tuple(prefix), cycle)


# ---------------------------------------------------------------- solving

START = None  # frontier before the first row


@dataclass(frozen=True)
class GameState:
    rows_placed: int
    frontier: RowState | None
    turn: str


@dataclass
class Strategy:
    """Positional strategy for E.

    Moves are keyed by (position, frontier); position is the number of
    rows placed for fixed height and the sequence phase otherwise.
    """

    by_phase: bool
    moves: dict[tuple[int, RowState | None], RowState] = field(default_factory=dict)

    def key(self, seq: ResolvedSequence, state: GameState):
        pos = seq.phase(state.rows_placed) if self.by_phase else state.rows_placed
        return (pos, state.frontier)

    def move(self, seq: ResolvedSequence, state: GameState) -> RowState | None:
        return self.moves.get(self.key(seq, state))


@dataclass(frozen=True)
class GameResult:
    exists: bool
    strategy: Strategy | None
    states: int

    def __bool__(self):
        return self.exists


def _legal(instance: TilingInstance, frontier: RowState | None) -> list[RowState]:
    if frontier is None:
        return list(start_rows(instance))
    return list(successor_rows(instance, frontier))


def _coerce(seq, n, params) -> ResolvedSequence:
    if isinstance(seq, ResolvedSequence):
        return seq
    if isinstance(seq, str):
        seq = PlayerSequence.parse(seq)
    return resolve_sequence(seq, max(n, 1), **params)


def solve_game(instance: TilingInstance, seq, n: int | None = None, *,
               objective: str = "tile", budget: int = DEFAULT_BUDGET,
               params: Mapping[str, int] | None = None) -> GameResult:
    """Decide whether E has a winning strategy and return one if so.

    ``seq`` is a PlayerSequence, its text, or an already resolved
    sequence; ``n`` defaults to the instance's n.
    """
    if objective not in ("tile", "block"):
        raise ValueError("objective must be 'tile' or 'block'")
    rs = _coerce(seq, instance.n if n is None else n, params or {})
    if instance.height is None:
        return _solve_arbitrary(instance, rs, objective, budget)
    return _solve_fixed(instance, rs, objective, budget)


class _Counter:
    def __init__(self, budget, what):
        self.n, self.budget, self.what = 0, budget, what

    def tick(self):
        self.n += 1
        if self.n > self.budget:
            raise BudgetExceeded(self.what, self.budget)


def _solve_fixed(instance, rs, objective, budget) -> GameResult:
    H = instance.height
    if rs.length is not None and rs.length < H:
        raise IndexError(f"the sequence covers {rs.length} rows but the height is {H}")
    owners = [rs.owner(i) for i in range(1, H + 1)]
    want_tiled = objective == "tile"
    memo: dict[tuple[int, RowState | None], bool] = {}
    choice: dict[tuple[int, RowState | None], RowState] = {}
    counter = _Counter(budget, "fixed-height game")
    legal_cache: dict[RowState | None, list[RowState]] = {}

    def legal(f):
        if f not in legal_cache:
            legal_cache[f] = _legal(instance, f)
        return legal_cache[f]

    def win(k: int, f) -> bool:
        key = (k, f)
        if key in memo:
            return memo[key]
        counter.tick()
        if k == H:
            res = f.bottom_white == want_tiled
        else:
            moves = legal(f)
            if not moves:
                res = not want_tiled  # stalled play is not a tiling
            elif owners[k] == E:
                res = False
                for m in moves:
                    if win(k + 1, m):
                        choice[key] = m
                        res = True
                        break
            else:
                res = all(win(k + 1, m) for m in moves)
        memo[key] = res
        return res

    if not win(0, START):
        return GameResult(False, None, len(memo))
    strategy = Strategy(by_phase=False)
    # keep only the entries reachable when E follows its choices
    stack = [(0, START)]
    seen = set()
    while stack:
        k, f = stack.pop()
        if (k, f) in seen or k == H:
            continue
        seen.add((k, f))
        if owners[k] == E:
            if (k, f) not in choice:
                continue  # stalled, which wins for E under the block objective
            m = choice[k, f]
            strategy.moves[k, f] = m
            stack.append((k + 1, m))
        else:
            stack.extend((k + 1, m) for m in legal(f))
    return GameResult(True, strategy, len(memo))


def _solve_arbitrary(instance, rs, objective, budget) -> GameResult:
    # explicit arena over (phase, frontier); target = placed row with white bottom
    counter = _Counter(budget, "arbitrary-height game")
    start = (0, START)
    succ: dict[tuple, list[tuple]] = {}
    owner: dict[tuple, str | None] = {}
    queue = deque([start])
    succ_seen = {start}
    while queue:
        s = queue.popleft()
        counter.tick()
        phase, f = s
        if f is not None and f.bottom_white:
            succ[s], owner[s] = [], None
            continue
        who = rs.owner_at_phase(phase)
        owner[s] = who
        if who is None:
            succ[s] = []
            continue
        nxt_phase = rs.next_phase(phase)
        nxt = [(nxt_phase, m) for m in _legal(instance, f)]
        succ[s] = nxt
        for t in nxt:
            if t not in succ_seen:
                succ_seen.add(t)
                queue.append(t)

    tiler = E if objective == "tile" else A
    pred: dict[tuple, list[tuple]] = {s: [] for s in succ}
    for s, ts in succ.items():
        for t in ts:
            pred[t].append(s)
    attr = {s for s in succ if s[1] is not None and s[1].bottom_white}
    remaining = {s: len(ts) for s, ts in succ.items()}
    queue = deque(attr)
    while queue:
        t = queue.popleft()
        for s in pred[t]:
            if s in attr:
                continue
            if owner[s] == tiler:
                attr.add(s)
                queue.append(s)
            else:
                remaining[s] -= 1
                if remaining[s] == 0:
                    attr.add(s)
                    queue.append(s)

    e_wins = (start in attr) == (objective == "tile")
    if not e_wins:
        return GameResult(False, None, len(succ))
    strategy = Strategy(by_phase=True)
    # distance ranks make the tiler's choices progress towards the target
    rank = _attractor_rank(attr, succ, owner, tiler) if objective == "tile" else None
    stack, seen = [start], set()
    while stack:
        s = stack.pop()
        if s in seen or not succ[s]:
            continue
        seen.add(s)
        if owner[s] == E:
            if objective == "tile":
                m = min((t for t in succ[s] if t in attr), key=lambda t: rank[t])
            else:
                m = next(t for t in succ[s] if t not in attr)
            strategy.moves[s] = m[1]
            stack.append(m)
        else:
            stack.extend(succ[s])
    return GameResult(True, strategy, len(succ))


def _attractor_rank(attr, succ, owner, tiler):
    """Rounds of the attractor fixpoint, recomputed layer by layer."""
    rank = {s: 0 for s in attr if not succ[s]}
    r = 0
    while len(rank) < len(attr):
        r += 1
        layer = []
        for s in attr:
            if s in rank:
                continue
            ts = succ[s]
            if owner[s] == tiler:
                ok = any(t in rank for t in ts)
            else:
                ok = all(t in rank for t in ts)
            if ok:
                layer.append(s)
        if not layer:
            break
        for s in layer:
            rank[s] = r
    return rank


# ---------------------------------------------------------------- checking

@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str = ""
    play: tuple[RowState, ...] = ()

    def __bool__(self):
        return self.ok


def verify_strategy(instance: TilingInstance, seq, strategy: Strategy, n: int | None = None, *,
                    objective: str = "tile", adversary_budget: int = DEFAULT_BUDGET,
                    params: Mapping[str, int] | None = None) -> VerifyResult:
    """Play the strategy against every A response and check each play.

    Fails with the offending play on a missing or illegal E move, or on a
    play E loses (including an infinite play under the tile objective).
    """
    rs = _coerce(seq, instance.n if n is None else n, params or {})
    want_tiled = objective == "tile"
    H = instance.height
    counter = _Counter(adversary_budget, "strategy verification")
    good: set = set()
    on_path: set = set()
    play: list[RowState] = []

    def node(k, f):
        return (rs.phase(k) if H is None else k, f)

    def check(k: int, f) -> VerifyResult | None:
        key = node(k, f)
        if key in good:
            return None
        counter.tick()
        if H is not None and k == H:
            if f.bottom_white == want_tiled:
                return None
            return VerifyResult(False, "play ends with the wrong outcome", tuple(play))
        if H is None and f is not None and f.bottom_white:
            if want_tiled:
                good.add(key)
                return None
            return VerifyResult(False, "play reaches a white bottom row", tuple(play))
        if key in on_path:
            if want_tiled:
                return VerifyResult(False, "infinite play never tiles", tuple(play))
            return None
        moves = _legal(instance, f)
        if H is None and rs.owner_at_phase(key[0]) is None:
            moves = []
        if not moves:
            if want_tiled:
                return VerifyResult(False, f"no legal row {k + 1}; play stalls", tuple(play))
            good.add(key)
            return None
        who = rs.owner(k + 1)
        if who == E:
            m = strategy.move(rs, GameState(k, f, E))
            if m is None:
                return VerifyResult(False, f"strategy has no move for row {k + 1}", tuple(play))
            if m not in moves:
                return VerifyResult(False, f"strategy plays an illegal row {k + 1}", tuple(play) + (m,))
            moves = [m]
        on_path.add(key)
        for m in moves:
            play.append(m)
            bad = check(k + 1, m)
            play.pop()
            if bad is not None:
                on_path.discard(key)
                return bad
        on_path.discard(key)
        good.add(key)
        return None

    bad = check(0, START)
    return bad if bad is not None else VerifyResult(True)


def strategy_rows(strategy: Strategy) -> Iterable[tuple[int, RowState | None, RowState]]:
    for (pos, f), m in sorted(strategy.moves.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
        yield pos, f, m
