import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from wangbench.core import WHITE, TileSet, TileType, TilingInstance
from wangbench.fo import (And, Atom, Exists, emit_formula, evaluate_formula, format_formula,
                          node_count, parse_formula)
from wangbench.samples import FIGURE1_SEED, FIGURE1_TILES
from wangbench.solve import solve_fixed

from oracles import UNIVERSE2, recursive_exists


def atoms_of(f, pred):
    return [a for a in f.body.parts if a.pred == pred]


def test_one_by_one():
    f = emit_formula(1, 1)
    assert f == Exists(("t1",), And((Atom("LW", ("t1",)), Atom("RW", ("t1",)),
                                     Atom("TW", ("t1",)), Atom("BW", ("t1",)))))


def test_two_by_two_core():
    f = emit_formula(2, 2)
    assert f.variables == ("t1", "t2", "t3", "t4")
    core = [a for a in f.body.parts if a.pred in ("H", "V")]
    assert [(a.pred, a.args) for a in core] == [
        ("H", ("t1", "t2")), ("H", ("t3", "t4")),
        ("V", ("t1", "t3")), ("V", ("t2", "t4")),
    ]


@pytest.mark.parametrize("k,l", [(k, l) for k in range(1, 5) for l in range(1, 5)])
def test_atom_counts(k, l):
    f = emit_formula(k, l, with_seed=True)
    assert len(f.variables) == k * l
    assert len(atoms_of(f, "H")) == k * (l - 1)
    assert len(atoms_of(f, "V")) == l * (k - 1)
    assert len(atoms_of(f, "LW")) == len(atoms_of(f, "RW")) == k
    assert len(atoms_of(f, "TW")) == len(atoms_of(f, "BW")) == l
    assert atoms_of(f, "SEED") == [Atom("SEED", ("t1",))]


def test_two_by_three_counts():
    f = emit_formula(2, 3)
    assert len(f.variables) == 6
    assert len(atoms_of(f, "H")) == 4 and len(atoms_of(f, "V")) == 3


def test_figure1_with_seed():
    assert evaluate_formula(emit_formula(3, 3, True), FIGURE1_TILES, FIGURE1_SEED)


def test_empty_tile_set_is_false():
    for k, l in itertools.product(range(1, 4), repeat=2):
        assert not evaluate_formula(emit_formula(k, l), TileSet())


def test_seed_atom_needs_a_seed():
    with pytest.raises(ValueError, match="SEED"):
        evaluate_formula(emit_formula(1, 1, True), TileSet([TileType(WHITE, WHITE, WHITE, WHITE)]))


def test_bad_shapes_and_text():
    with pytest.raises(ValueError):
        emit_formula(0, 2)
    for bad in ["", "(and", "(H t1)", "(exists (t1) (LW t1)) x", "(LW t1 t2)"]:
        with pytest.raises(ValueError):
            parse_formula(bad)


@pytest.mark.parametrize("k,l,seed", [(k, l, s) for k in (1, 2, 3) for l in (1, 2, 3)
                                      for s in (False, True)])
def test_text_round_trip(k, l, seed):
    f = emit_formula(k, l, seed)
    assert parse_formula(format_formula(f)) == f


def test_size_depends_on_shape_only():
    # the emitter never sees a tile set; node counts follow a closed form
    for k, l in itertools.product(range(1, 6), repeat=2):
        f = emit_formula(k, l)
        atoms = k * (l - 1) + l * (k - 1)
        borders = 2 * k + 2 * l
        assert node_count(f) == 1 + k * l + 1 + 3 * atoms + 2 * borders


def tiny_sets(rng, count):
    yield from ([t] for t in UNIVERSE2)
    for _ in range(count):
        yield rng.sample(UNIVERSE2, rng.randint(2, 3))


def test_matches_solve_fixed_on_tiny_sets():
    rng = random.Random(7)
    yes = 0
    for tiles in tiny_sets(rng, 300):
        ts = TileSet(tiles)
        for k, l in itertools.product(range(1, 4), repeat=2):
            for seed in [None, *tiles]:
                got = evaluate_formula(emit_formula(k, l, seed is not None), ts, seed)
                assert got == solve_fixed(TilingInstance(ts, l, k, seed)).exists, (tiles, k, l, seed)
                yes += got
    assert yes > 50


@settings(deadline=None)
@given(st.lists(st.sampled_from(UNIVERSE2), min_size=1, max_size=3, unique=True),
       st.integers(1, 3), st.integers(1, 3))
def test_matches_plain_enumeration(tiles, k, l):
    assert evaluate_formula(emit_formula(k, l), TileSet(tiles)) == recursive_exists(tiles, k, l)
