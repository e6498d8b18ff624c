"""ASCII and SVG pictures of tilings.

Output is a pure function of the tiling and the spec, so identical inputs
give byte-identical documents.
"""

from __future__ import annotations

import colorsys
import string
from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from .core import WHITE, Tiling

# colors whose names already mean something to a browser keep that meaning
CSS_NAMES = frozenset("""
    black blue brown cyan gold gray green grey lime magenta maroon navy olive
    orange pink purple red silver teal violet white yellow
""".split())

PALETTE = ("#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948",
           "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")


@dataclass
class RenderSpec:
    format: str = "ascii"
    legend: dict[str, str] = field(default_factory=dict)
    cell_size: int = 40

    def __post_init__(self):
        if self.format not in ("ascii", "svg"):
            raise ValueError(f"unknown render format {self.format!r}")


def colors_in_order(tiling: Tiling) -> list[str]:
    """Distinct colors in row-major cell order, sides left, top, right, bottom."""
    seen = dict.fromkeys(c for _, _, t in tiling.cells() for c in t.sides)
    return list(seen)


def _ascii_code(k: int) -> str:
    letters = string.ascii_uppercase
    return letters[k] if k < 26 else letters[k // 26 - 1] + letters[k % 26]


def _svg_fill(k: int) -> str:
    if k < len(PALETTE):
        return PALETTE[k]
    # golden-angle hues past the fixed palette
    r, g, b = colorsys.hls_to_rgb((k * 0.618033988749895) % 1.0, 0.55, 0.55)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def auto_legend(tiling: Tiling, format: str, given: dict[str, str] | None = None) -> dict[str, str]:
    """Complete ``given`` so that every color of the tiling has an entry."""
    legend = dict(given or {})
    k = 0
    for c in colors_in_order(tiling):
        if c in legend:
            continue
        if c == WHITE and format == "ascii":
            legend[c] = "."
        elif c in CSS_NAMES and format == "svg":
            legend[c] = c
        else:
            legend[c] = _ascii_code(k) if format == "ascii" else _svg_fill(k)
            k += 1
    return legend


def render(tiling: Tiling, spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec()
    legend = auto_legend(tiling, spec.format, spec.legend)
    if spec.format == "ascii":
        return _ascii(tiling, legend)
    return _svg(tiling, legend, spec.cell_size)


def _ascii(tiling: Tiling, legend: dict[str, str]) -> str:
    w = max(len(v) for v in legend.values())
    inner = 2 * w + 1
    rule = "+" + "+".join("-" * inner for _ in range(tiling.width)) + "+"
    out = [rule]
    for row in tiling.rows:
        tops = "|".join(legend[t.top].center(inner) for t in row)
        mids = "|".join(legend[t.left].ljust(w) + " " + legend[t.right].rjust(w) for t in row)
        bots = "|".join(legend[t.bottom].center(inner) for t in row)
        out += [f"|{tops}|", f"|{mids}|", f"|{bots}|", rule]
    out.append("")
    out += [f"{code:>{w}} = {color}" for color, code in legend.items()]
    return "\n".join(out) + "\n"


def _svg(tiling: Tiling, legend: dict[str, str], s: int) -> str:
    width, height = tiling.width * s, tiling.height * s
    key_h = 18 * len(legend) + 8
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{height + key_h}" viewBox="0 0 {width} {height + key_h}">']
    for i, j, t in tiling.cells():
        x, y = (j - 1) * s, (i - 1) * s
        cx, cy = x + s / 2, y + s / 2
        corners = {"left": ((x, y + s), (x, y)), "top": ((x, y), (x + s, y)),
                   "right": ((x + s, y), (x + s, y + s)),
                   "bottom": ((x + s, y + s), (x, y + s))}
        for side, (a, b) in corners.items():
            color = getattr(t, side)
            pts = f"{a[0]:g},{a[1]:g} {b[0]:g},{b[1]:g} {cx:g},{cy:g}"
            out.append(f'  <polygon points="{pts}" fill={quoteattr(legend[color])} '
                       f'stroke="#333" stroke-width="0.5"><title>{escape(color)}</title></polygon>')
        out.append(f'  <rect x="{x}" y="{y}" width="{s}" height="{s}" fill="none" '
                   f'stroke="#000" stroke-width="1"/>')
    for k, (color, fill) in enumerate(legend.items()):
        y = height + 8 + 18 * k
        out.append(f'  <rect x="4" y="{y}" width="12" height="12" fill={quoteattr(fill)} '
                   f'stroke="#333" stroke-width="0.5"/>')
        out.append(f'  <text x="22" y="{y + 10}" font-family="monospace" '
                   f'font-size="11">{escape(color)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
