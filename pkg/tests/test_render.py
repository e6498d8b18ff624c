import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from wangbench.core import WHITE, TileType, Tiling
from wangbench.render import RenderSpec, auto_legend, colors_in_order, render
from wangbench.samples import FIGURE1_TILING, FIGURE4_PREFIX

GOLDEN = Path(__file__).parent / "golden"
SVG = "{http://www.w3.org/2000/svg}"


def test_one_white_cell_ascii():
    t = Tiling([[TileType(WHITE, WHITE, WHITE, WHITE)]])
    assert render(t) == "+---+\n| . |\n|. .|\n| . |\n+---+\n\n. = white\n"


def test_one_white_cell_svg():
    root = ET.fromstring(render(Tiling([[TileType(WHITE, WHITE, WHITE, WHITE)]]), RenderSpec("svg")))
    polys = root.findall(f"{SVG}polygon")
    assert len(polys) == 4 and {p.get("fill") for p in polys} == {"white"}


def test_figure1_svg_uses_named_colors():
    root = ET.fromstring(render(FIGURE1_TILING, RenderSpec("svg")))
    fills = [p.get("fill") for p in root.findall(f"{SVG}polygon")]
    assert len(fills) == 4 * 9
    assert set(fills) == {"white", "green", "red", "yellow"}


def test_legend_covers_every_color_in_interning_order():
    for tiling in (FIGURE1_TILING, FIGURE4_PREFIX):
        for fmt in ("ascii", "svg"):
            legend = auto_legend(tiling, fmt)
            assert list(legend) == colors_in_order(tiling)
            assert len(set(legend.values())) == len(legend)


def test_given_legend_entries_are_kept():
    legend = auto_legend(FIGURE1_TILING, "ascii", {"red": "R"})
    assert legend["red"] == "R" and legend[WHITE] == "."


def test_many_colors_get_distinct_fills():
    row = [TileType(WHITE if j == 0 else f"c{j}", WHITE, f"c{j + 1}" if j < 39 else WHITE, WHITE)
           for j in range(40)]
    legend = auto_legend(Tiling([row]), "svg")
    assert len(set(legend.values())) == len(legend)


def test_unknown_format():
    with pytest.raises(ValueError):
        RenderSpec("png")


@pytest.mark.parametrize("name,tiling,spec", [
    ("figure4_bba.txt", FIGURE4_PREFIX, RenderSpec("ascii")),
    ("figure4_bba.svg", FIGURE4_PREFIX, RenderSpec("svg")),
    ("figure1.svg", FIGURE1_TILING, RenderSpec("svg")),
])
def test_golden_files(name, tiling, spec):
    assert render(tiling, spec) == (GOLDEN / name).read_text()


def test_byte_identical_across_processes():
    code = ("import sys; from wangbench.render import render, RenderSpec; "
            "from wangbench.samples import FIGURE4_PREFIX as T; "
            "sys.stdout.write(render(T, RenderSpec('svg')) + render(T))")
    outs = {subprocess.run([sys.executable, "-c", code], capture_output=True,
                           env={"PYTHONHASHSEED": str(s)}, check=True).stdout for s in (0, 1, 2)}
    assert len(outs) == 1
