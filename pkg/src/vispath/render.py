"""Figures: a self-contained SVG writer and a matplotlib PNG variant.

Polygon outline black, essential cuts in ``cut_color``, redundant cuts
dashed gray, the path as a ``path_color`` polyline, uncovered oracle samples
as crosses.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .certify import PolyPath
from .cuts import Cut, Essentiality
from .geom import Point, rational
from .oracle import CoverageReport
from .polygon import Polygon

_COLOR = re.compile(r"^(#[0-9a-fA-F]{3}|#[0-9a-fA-F]{6}|[a-zA-Z]+)$")


@dataclass(frozen=True)
class RenderStyle:
    cut_color: str = "red"
    path_color: str = "blue"
    essential_only: bool = False
    show_pockets: bool = False
    scale: mpq = mpq(20)

    def __post_init__(self):
        for c in (self.cut_color, self.path_color):
            if not _COLOR.match(c):
                raise ValueError(f"not a CSS color: {c!r}")
        object.__setattr__(self, "scale", rational(self.scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def _num(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    """Maps polygon coordinates to SVG user units (y axis flipped)."""

    def __init__(self, poly: Polygon, scale: mpq, margin: int = 10):
        x0, y0, x1, y1 = poly.bbox
        self.x0, self.y1 = x0, y1
        self.s = scale
        self.m = margin
        self.width = float((x1 - x0) * scale) + 2 * margin
        self.height = float((y1 - y0) * scale) + 2 * margin

    def xy(self, p: Point) -> tuple[str, str]:
        return (_num(float((p.x - self.x0) * self.s) + self.m),
                _num(float((self.y1 - p.y) * self.s) + self.m))

    def pts(self, ring: Sequence[Point]) -> str:
        return " ".join(",".join(self.xy(p)) for p in ring)


def render_svg(poly: Polygon, cuts: Sequence[Cut] = (), path: PolyPath | None = None,
               report: CoverageReport | None = None, style: RenderStyle | None = None) -> str:
    """Deterministic SVG 1.1 text; identical input gives identical bytes."""
    style = style or RenderStyle()
    f = _Frame(poly, style.scale)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(f.width)}" '
        f'height="{_num(f.height)}" viewBox="0 0 {_num(f.width)} {_num(f.height)}">',
        f'<rect class="background" x="0" y="0" width="{_num(f.width)}" height="{_num(f.height)}" fill="white"/>',
    ]
    essential = [c for c in cuts if c.essential is not Essentiality.REDUNDANT]
    redundant = [c for c in cuts if c.essential is Essentiality.REDUNDANT]
    if style.show_pockets:
        for c in essential:
            out.append(f'<polygon class="pocket" points="{f.pts(c.pocket.region)}" '
                       f'fill="{style.cut_color}" fill-opacity="0.12" stroke="none"/>')
    out.append(f'<polygon class="outline" points="{f.pts(poly.vertices)}" fill="none" '
               'stroke="black" stroke-width="1.5"/>')
    if not style.essential_only:
        for c in redundant:
            (x1, y1), (x2, y2) = f.xy(c.v), f.xy(c.w)
            out.append(f'<line class="cut redundant" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                       'stroke="gray" stroke-width="1" stroke-dasharray="4,3"/>')
    for c in essential:
        (x1, y1), (x2, y2) = f.xy(c.v), f.xy(c.w)
        out.append(f'<line class="cut essential" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                   f'stroke="{style.cut_color}" stroke-width="1.5"/>')
    if path is not None:
        if len(path.waypoints) == 1:
            x, y = f.xy(path.waypoints[0])
            out.append(f'<circle class="path" cx="{x}" cy="{y}" r="3" fill="{style.path_color}"/>')
        else:
            out.append(f'<polyline class="path" points="{f.pts(path.waypoints)}" fill="none" '
                       f'stroke="{style.path_color}" stroke-width="2"/>')
    if report is not None:
        for s in report.uncovered:
            x, y = (float(v) for v in f.xy(s.point))
            d = (f"M{_num(x - 3)},{_num(y - 3)} L{_num(x + 3)},{_num(y + 3)} "
                 f"M{_num(x - 3)},{_num(y + 3)} L{_num(x + 3)},{_num(y - 3)}")
            out.append(f'<path class="uncovered" d="{d}" stroke="darkorange" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_png(filename, poly: Polygon, cuts: Sequence[Cut] = (), path: PolyPath | None = None,
               report: CoverageReport | None = None, style: RenderStyle | None = None,
               title: str | None = None) -> None:
    """Same picture as :func:`render_svg`, drawn with matplotlib to a file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    style = style or RenderStyle()
    fig, ax = plt.subplots(figsize=(6, 6))
    ring = list(poly.vertices) + [poly.vertices[0]]
    ax.plot([float(p.x) for p in ring], [float(p.y) for p in ring], color="black", lw=1.5)
    for c in cuts:
        xs, ys = [float(c.v.x), float(c.w.x)], [float(c.v.y), float(c.w.y)]
        if c.essential is Essentiality.REDUNDANT:
            if not style.essential_only:
                ax.plot(xs, ys, color="gray", lw=1, ls="--")
            continue
        ax.plot(xs, ys, color=style.cut_color, lw=1.5)
        if style.show_pockets:
            ax.fill([float(p.x) for p in c.pocket.region], [float(p.y) for p in c.pocket.region],
                    color=style.cut_color, alpha=0.12, lw=0)
    if path is not None:
        xs = [float(p.x) for p in path.waypoints]
        ys = [float(p.y) for p in path.waypoints]
        ax.plot(xs, ys, color=style.path_color, lw=2, marker="o" if len(xs) == 1 else None)
    if report is not None and report.uncovered:
        ax.scatter([float(s.point.x) for s in report.uncovered], [float(s.point.y) for s in report.uncovered],
                   marker="x", color="darkorange", s=12, lw=0.8)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.savefig(filename, dpi=120, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
