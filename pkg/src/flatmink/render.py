"""SVG pictures of circles in the torus chart [0, 1)^2.

Each coordinate t of S^1 is drawn at u = 1/2 + atan(t)/pi, so inf sits on
the edge of the square (0 and 1 are identified) and the finite plane fills
the interior. Parallel classes are the vertical and horizontal grid lines.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .circles import Curve
from .torus import TorusPoint, is_inf

SIZE = 512
MARGIN = 24
COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
GRID_VALUES = (-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, math.inf)
# offsets from the branch point (or from 0 for lines) sampled per branch
_OFFSETS = np.geomspace(1e-4, 1e4, 400)


def chart(t: float) -> float:
    """Chart coordinate in [0, 1) of a point of S^1."""
    return 0.0 if is_inf(t) else 0.5 + math.atan(t) / math.pi


def _xy(u: float, v: float) -> tuple:
    w = SIZE - 2 * MARGIN
    return (MARGIN + u * w, MARGIN + (1.0 - v) * w)


def _branches(C) -> list:
    """Lists of finite points of C, one list per connected branch."""
    if isinstance(C, Curve):
        x0 = C.branch_x()
        right = [TorusPoint(x0 + d, C.eval(x0 + d)) for d in _OFFSETS]
        left = [TorusPoint(x0 - d, C.eval(x0 - d)) for d in _OFFSETS[::-1]]
        return [left, right]
    xs = np.concatenate([-_OFFSETS[::-1], [0.0], _OFFSETS])
    return [[TorusPoint(float(x), C.eval(float(x))) for x in xs]]


def _polyline(points, colour) -> str:
    coords = []
    for p in points:
        if is_inf(p.x) or is_inf(p.y):
            continue
        x, y = _xy(chart(p.x), chart(p.y))
        coords.append(f"{x:.2f},{y:.2f}")
    if len(coords) < 2:
        return ""
    return (f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" '
            f'points="{" ".join(coords)}"/>')


def _marker(p: TorusPoint, colour: str, r: float = 3.5, filled: bool = False) -> str:
    x, y = _xy(chart(p.x), chart(p.y))
    fill = colour if filled else "white"
    return f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{fill}" stroke="{colour}"/>'


def render_svg(circles, points=(), labels=None, title: str = "") -> str:
    """SVG 1.1 document drawing ``circles`` and marking ``points``.

    Infinite points of each circle are drawn as hollow markers on the edge.
    """
    w = SIZE - 2 * MARGIN
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">']
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}" '
               'fill="white" stroke="#444"/>')
    for t in GRID_VALUES:
        u = chart(t)
        (gx, _), (_, gy) = _xy(u, 0.0), _xy(0.0, u)
        out.append(f'<line x1="{gx:.2f}" y1="{MARGIN}" x2="{gx:.2f}" y2="{SIZE - MARGIN}" '
                   'stroke="#ddd"/>')
        out.append(f'<line x1="{MARGIN}" y1="{gy:.2f}" x2="{SIZE - MARGIN}" y2="{gy:.2f}" '
                   'stroke="#ddd"/>')
    for i, C in enumerate(circles):
        colour = COLOURS[i % len(COLOURS)]
        name = labels[i] if labels else repr(C)
        out.append(f'<g id="circle{i}"><title>{escape(name)}</title>')
        out.extend(s for s in (_polyline(b, colour) for b in _branches(C)) if s)
        out.extend(_marker(p, colour) for p in C.infinite_points())
        out.append("</g>")
    out.extend(_marker(p, "black", 4.0, filled=True) for p in points)
    out.append("</svg>")
    return "\n".join(out)
