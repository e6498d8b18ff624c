import pytest

from wangbench.core import TilingInstance
from wangbench.game import resolve_sequence
from wangbench.gen import FRAME_TILES, gen_instance
from wangbench.solve import ExpoOverflow, expo, solve_fixed

from oracles import count_tilings


def test_square():
    inst = gen_instance("square-n", 4).instance
    assert (inst.height, inst.width) == (4, 4)


def test_exp_ladder_k1_n3():
    inst = gen_instance("exp-ladder", 3, 1).instance
    assert (inst.height, inst.width) == (8, 3) == (expo(1, 3), expo(0, 3))


def test_exp_ladder_k2():
    inst = gen_instance("exp-ladder", 2, 2).instance
    assert (inst.height, inst.width) == (16, 4)


def test_exp_ladder_overflow_propagates():
    with pytest.raises(ExpoOverflow):
        gen_instance("exp-ladder", 7, 3)


def test_line():
    inst = gen_instance("line-n", 5).instance
    assert (inst.height, inst.width) == (5, 1)


def test_game_alt():
    g = gen_instance("game-alt", 2, 2)
    assert g.instance.height == 6
    rs = resolve_sequence(g.sequence, 2, **g.params)
    assert "".join(rs.prefix) == "EEAAEE" and rs.cycle is None


def test_unknown_family_and_bad_n():
    with pytest.raises(ValueError, match="unknown family"):
        gen_instance("cube", 2)
    with pytest.raises(ValueError):
        gen_instance("square-n", 0)


def test_frame_tiles_tile_every_small_rectangle():
    assert len(FRAME_TILES) == 16
    for h in range(1, 4):
        for w in range(1, 4):
            assert solve_fixed(TilingInstance(FRAME_TILES, w, h)).exists
            assert count_tilings(list(FRAME_TILES), h, w) >= 1
