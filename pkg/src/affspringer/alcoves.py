"""Static SVG pictures of alcoves for ranks 2 and 3."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .weyl import (AffineWeylElement, bruhat_interval_below, elements_up_to_length,
                   enumerate_F, length, w0)

COLORS = {"plain": "#ffffff", "box": "#9ecae1", "bound": "#fdae6b", "both": "#bc80bd"}


def _project(v) -> tuple[float, float]:
    """Coordinates of a vector of ``R^3`` modulo ``(1, 1, 1)`` in the plane."""
    a, b, c = (float(t) for t in v)
    return ((a - b) / math.sqrt(2), (a + b - 2 * c) / math.sqrt(6))


def _fill(w, box, bound) -> str:
    key = ("both" if w in box and w in bound else "box" if w in box
           else "bound" if w in bound else "plain")
    return COLORS[key]


def _svg(width: int, height: int, body: list[str], title: str) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    return "\n".join([head, f"<title>{escape(title)}</title>", *body, "</svg>"]) + "\n"


def alcove_svg(n: int, x: AffineWeylElement | None = None, radius: int = 6) -> str:
    """The alcoves of length at most ``radius`` with the box shaded.

    When ``x`` is given the alcoves of ``{y <= w0 x}`` are highlighted.
    """
    if n not in (2, 3):
        raise ValueError("pictures are only drawn for n = 2 and n = 3")
    box = set(enumerate_F(n))
    bound = set(bruhat_interval_below(w0(n) * x)) if x is not None else set()
    radius = max(radius, max((length(w) for w in bound), default=0))
    elements = sorted(elements_up_to_length(n, radius))
    title = f"alcoves n={n}" + (f", below w0*{x.encode()}" if x is not None else "")
    if n == 2:
        return _line_picture(elements, box, bound, title)
    return _plane_picture(elements, box, bound, title)


def _line_picture(elements, box, bound, title) -> str:
    scale, pad = 60, 20
    spans = []
    for w in elements:
        ends = sorted(v[0] - v[1] for v in w.vertex_images())
        spans.append((ends[0], ends[1], w))
    lo = min(a for a, _, _ in spans)
    hi = max(b for _, b, _ in spans)
    width = int((hi - lo) * scale + 2 * pad)
    body = []
    for a, b, w in sorted(spans):
        x0 = pad + (a - lo) * scale
        stroke = 3 if w.is_identity() else 1
        body.append(f'<rect x="{x0:.2f}" y="20" width="{(b - a) * scale:.2f}" height="40" '
                    f'fill="{_fill(w, box, bound)}" stroke="#000" stroke-width="{stroke}">'
                    f"<title>{escape(w.encode())}</title></rect>")
    return _svg(width, 80, body, title)


def _plane_picture(elements, box, bound, title) -> str:
    pad = 20
    tris = []
    for w in elements:
        pts = [_project(v) for v in w.vertex_images()]
        tris.append((pts, w))
    xs = [p[0] for pts, _ in tris for p in pts]
    ys = [p[1] for pts, _ in tris for p in pts]
    scale = 60
    width = int((max(xs) - min(xs)) * scale + 2 * pad)
    height = int((max(ys) - min(ys)) * scale + 2 * pad)
    body = []
    for pts, w in tris:
        coords = " ".join(f"{pad + (px - min(xs)) * scale:.2f},{pad + (max(ys) - py) * scale:.2f}"
                          for px, py in pts)
        stroke = 3 if w.is_identity() else 1
        body.append(f'<polygon points="{coords}" fill="{_fill(w, box, bound)}" stroke="#000" '
                    f'stroke-width="{stroke}"><title>{escape(w.encode())}</title></polygon>')
    return _svg(width, height, body, title)
