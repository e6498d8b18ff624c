import random

import pytest
from hypothesis import given, settings, strategies as st

from wangbench.core import WHITE, TileSet, TileType, TilingInstance
from wangbench.game import (A, E, Block, Group, Num, PlayerSequence, Strategy, Var,
                            resolve_sequence, solve_game, verify_strategy)
from wangbench.samples import figure1_instance
from wangbench.solve import solve_arbitrary, solve_fixed

from oracles import UNIVERSE2, game_tree_value


def owners(text, n, rows, **params):
    rs = resolve_sequence(PlayerSequence.parse(text), n, **params)
    return "".join(rs.owner(i) for i in range(1, rows + 1))


def test_alternating_sequence():
    assert owners("(EA)*", 3, 6) == "EAEAEA"


def test_all_e_sequence():
    assert owners("E*", 1, 5) == "EEEEE"


def test_sigma_k_sequence_is_finite():
    rs = resolve_sequence(PlayerSequence.parse("E^n(A^nE^n)^(k-1)"), 2, k=2)
    assert rs.prefix == tuple("EEAAEE") and rs.length == 6
    with pytest.raises(IndexError):
        rs.owner(7)


def test_exponential_blocks():
    assert owners("(E^2^nA^2^n)*", 1, 8) == "EEAAEEAA"
    assert owners("(E^2^nA^2^n)*", 2, 16) == "EEEEAAAA" * 2


def test_swapped_and_printing():
    seq = PlayerSequence.parse("E^n(A^nE^n)^(k-1)")
    assert str(seq.swapped()) == "A^n(E^nA^n)^(k-1)"
    for text in ["E*", "(EA)*", "E^n(A^nE^n)^(k-1)", "(E^2^nA^2^n)*", "EA^3(EA)^2", "A^(n+1)E*"]:
        seq = PlayerSequence.parse(text)
        assert PlayerSequence.parse(str(seq)) == seq
        assert str(seq) == text


def test_unicode_players():
    assert PlayerSequence.parse("(∃∀)*") == PlayerSequence.parse("(EA)*")


@pytest.mark.parametrize("text", ["", "E*A", "(E", "E^", "()", "X"])
def test_bad_sequences(text):
    with pytest.raises(ValueError):
        PlayerSequence.parse(text)


lengths = st.one_of(st.builds(Num, st.integers(1, 4)), st.just(Var("n")))
blocks = st.builds(Block, st.sampled_from([E, A]), lengths)
items = st.recursive(blocks, lambda inner: st.builds(
    Group, st.lists(inner, min_size=1, max_size=3).map(tuple), lengths), max_leaves=6)


@settings(max_examples=200, deadline=None)
@given(st.lists(items, max_size=3).map(tuple), st.one_of(st.none(), st.lists(items, min_size=1, max_size=3).map(tuple)))
def test_sequence_text_round_trip(prefix, repeat):
    if not prefix and not repeat:
        return
    seq = PlayerSequence(prefix, repeat)
    again = PlayerSequence.parse(str(seq))
    assert resolve_sequence(again, 2) == resolve_sequence(seq, 2)


def test_exists_star_matches_solvers_on_figure1():
    for h in range(1, 6):
        inst = figure1_instance(height=h)
        assert solve_game(inst, "E*", 1).exists == solve_fixed(inst).exists
    inst = figure1_instance(height=None)
    assert solve_game(inst, "E*", 1).exists == solve_arbitrary(inst).exists


def random_instances(rng, count, max_tiles=3, W_max=2, H_max=3, arbitrary=False):
    for _ in range(count):
        tiles = rng.sample(UNIVERSE2, rng.randint(1, max_tiles))
        seed = rng.choice(tiles + [None])
        H = None if arbitrary else rng.randint(1, H_max)
        yield TilingInstance(TileSet(tiles), rng.randint(1, W_max), H, seed)


def test_exists_star_matches_solvers_random():
    rng = random.Random(31)
    for inst in random_instances(rng, 1500, max_tiles=5, W_max=3, H_max=4):
        assert solve_game(inst, "E*", 1).exists == solve_fixed(inst).exists
    for inst in random_instances(rng, 1500, max_tiles=5, W_max=3, arbitrary=True):
        assert solve_game(inst, "E*", 1).exists == solve_arbitrary(inst).exists


def test_single_row_game_is_plain_solving():
    rng = random.Random(32)
    for inst in random_instances(rng, 300, H_max=1):
        assert solve_game(inst, "(EA)*", 1).exists == solve_fixed(inst).exists


def test_alternating_games_match_game_tree_oracle():
    rng = random.Random(33)
    for inst in random_instances(rng, 1500):
        res = solve_game(inst, "(EA)*", 1)
        H = inst.height
        assert res.exists == game_tree_value(inst.tile_set.tiles, H, inst.width, inst.seed, "EA" * H)


def test_dual_game_is_complementary():
    rng = random.Random(34)
    for text in ["(EA)*", "(AE)*", "E*", "A^2E*"]:
        seq = PlayerSequence.parse(text)
        for inst in random_instances(rng, 300):
            a = solve_game(inst, seq, 1).exists
            b = solve_game(inst, seq.swapped(), 1, objective="block").exists
            assert a != b
        for inst in random_instances(rng, 300, arbitrary=True):
            a = solve_game(inst, seq, 1).exists
            b = solve_game(inst, seq.swapped(), 1, objective="block").exists
            assert a != b


def test_block_objective_matches_oracle():
    rng = random.Random(35)
    for inst in random_instances(rng, 500):
        H = inst.height
        got = solve_game(inst, "(AE)*", 1, objective="block").exists
        assert got == game_tree_value(inst.tile_set.tiles, H, inst.width, inst.seed, "AE" * H, False)


def test_strategies_verify():
    rng = random.Random(36)
    count = 0
    for arbitrary in (False, True):
        for text in ["(EA)*", "E*", "(AE)*"]:
            for inst in random_instances(rng, 400, max_tiles=4, arbitrary=arbitrary):
                for objective in ("tile", "block"):
                    res = solve_game(inst, text, 1, objective=objective)
                    if res.exists:
                        count += 1
                        assert verify_strategy(inst, text, res.strategy, 1, objective=objective)
    assert count > 100


A_TILE = TileType(WHITE, WHITE, WHITE, "x")
GOOD = TileType(WHITE, "x", WHITE, WHITE)
BAD = TileType(WHITE, "x", WHITE, "y")


def test_tampered_strategy_fails_with_play():
    inst = TilingInstance(TileSet([A_TILE, GOOD, BAD]), 1, 2, A_TILE)
    res = solve_game(inst, "E*", 1)
    assert res.exists
    strategy = Strategy(res.strategy.by_phase, dict(res.strategy.moves))
    key = next(k for k, v in strategy.moves.items() if v.tiles == (GOOD,))
    strategy.moves[key] = type(strategy.moves[key])((BAD,))
    verdict = verify_strategy(inst, "E*", strategy, 1)
    assert not verdict.ok and len(verdict.play) == 2 and verdict.play[-1].tiles == (BAD,)


def test_empty_strategy_fails():
    inst = TilingInstance(TileSet([A_TILE, GOOD]), 1, 2, A_TILE)
    assert solve_game(inst, "E*", 1).exists
    verdict = verify_strategy(inst, "E*", Strategy(False), 1)
    assert not verdict.ok and "no move" in verdict.reason


def test_forall_spoils_last_row():
    # A owns row 2 and may place the non-white bottom
    inst = TilingInstance(TileSet([A_TILE, GOOD, BAD]), 1, 2, A_TILE)
    assert not solve_game(inst, "(EA)*", 1).exists
    assert solve_game(inst.with_height(None), "(EA)*", 1).exists is False
    inst2 = TilingInstance(TileSet([A_TILE, GOOD]), 1, 2, A_TILE)
    assert solve_game(inst2, "(EA)*", 1).exists


def test_sequence_shorter_than_height_is_an_error():
    with pytest.raises(IndexError):
        solve_game(figure1_instance(), "EA", 1)


def test_monotone_in_tiles_for_exists_star():
    rng = random.Random(37)
    for inst in random_instances(rng, 300):
        if solve_game(inst, "E*", 1).exists:
            extra = TileSet(list(inst.tile_set) + [rng.choice(UNIVERSE2)])
            assert solve_game(TilingInstance(extra, inst.width, inst.height, inst.seed), "E*", 1).exists


@pytest.mark.parametrize("n", [1, 2])
def test_exponential_block_game(n):
    inst = TilingInstance(TileSet([A_TILE, GOOD, TileType(WHITE, "x", WHITE, "x")]), 1, 2 * 2**n, A_TILE)
    res = solve_game(inst, "(E^2^nA^2^n)*", n)
    assert res.exists == game_tree_value(inst.tile_set.tiles, inst.height, 1, A_TILE,
                                         "E" * 2**n + "A" * 2**n)
