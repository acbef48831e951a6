"""SVG rendering of drawings and book embeddings.

Output depends only on the artifact: coordinates are scaled exactly and rounded
to six decimals, and elements are emitted in sorted order.
"""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from gmpy2 import mpq

from .book import BookEmbedding
from .drawing import Drawing

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#393b79", "#637939",
)

MARGIN = 20


def colour_for(i: int) -> str:
    return PALETTE[(i - 1) % len(PALETTE)]


def fmt(x) -> str:
    """Exact value rounded half-up to six decimals."""
    q = mpq(x) * 10**6
    n = int((q + mpq(1, 2)).__floor__())
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 10**6}.{n % 10**6:06d}"


def _document(width, height, body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{fmt(width)}" height="{fmt(height)}" '
        f'viewBox="0 0 {fmt(width)} {fmt(height)}">\n'
    )
    return head + "".join(body) + "</svg>\n"


def _layers(kind: str, count: int, members: dict[int, list[str]], vertex_marks: list[str]) -> list[str]:
    body = []
    for c in range(1, count + 1):
        body.append(f'<g class="layer" id="{kind}-{c}" stroke="{colour_for(c)}" stroke-width="1.5" fill="none">\n')
        body.extend(members.get(c, []))
        body.append("</g>\n")
    body.append('<g id="vertices" fill="#000000">\n')
    body.extend(vertex_marks)
    body.append("</g>\n")
    return body


def drawing_svg(d: Drawing, scale=400) -> str:
    """Straight-line drawing scaled so the bounding box's longer side spans ``scale`` units."""
    pos = d.pos
    if pos:
        xs = [p.x for p in pos.values()]
        ys = [p.y for p in pos.values()]
        x0, y0 = min(xs), min(ys)
        span = max(max(xs) - x0, max(ys) - y0) or mpq(1)
    else:
        x0 = y0 = mpq(0)
        span = mpq(1)
    f = mpq(scale) / span
    width = (max(xs) - x0) * f + 2 * MARGIN if pos else 2 * MARGIN
    height = (max(ys) - y0) * f + 2 * MARGIN if pos else 2 * MARGIN

    def px(p):
        # y grows downward in SVG
        return (p.x - x0) * f + MARGIN, height - MARGIN - (p.y - y0) * f

    members: dict[int, list[str]] = {}
    for (u, v), c in sorted(d.colour_of.items()):
        (ax, ay), (bx, by) = px(pos[u]), px(pos[v])
        members.setdefault(c, []).append(
            f'<line x1="{fmt(ax)}" y1="{fmt(ay)}" x2="{fmt(bx)}" y2="{fmt(by)}" data-edge="{u}-{v}"/>\n'
        )
    marks = []
    for v in sorted(pos):
        cx, cy = px(pos[v])
        marks.append(f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="2.5"><title>{escape(str(v))}</title></circle>\n')
    return _document(width, height, _layers("colour", d.colour_count, members, marks))


def book_svg(emb: BookEmbedding, scale=400) -> str:
    """Vertices evenly spaced on a circle in order, each edge a chord coloured by page."""
    r = mpq(scale) / 2
    n = len(emb.order)
    centre = r + MARGIN
    at = {}
    for i, v in enumerate(emb.order):
        t = 2 * math.pi * i / max(n, 1)
        # float trig only for placement; the six-decimal rounding fixes the text
        at[v] = (centre + r * mpq(math.cos(t)), centre - r * mpq(math.sin(t)))
    members: dict[int, list[str]] = {}
    for (u, v), p in sorted(emb.page_of.items()):
        (ax, ay), (bx, by) = at[u], at[v]
        members.setdefault(p, []).append(
            f'<line x1="{fmt(ax)}" y1="{fmt(ay)}" x2="{fmt(bx)}" y2="{fmt(by)}" data-edge="{u}-{v}"/>\n'
        )
    marks = [
        f'<circle cx="{fmt(at[v][0])}" cy="{fmt(at[v][1])}" r="2.5"><title>{escape(str(v))}</title></circle>\n'
        for v in emb.order
    ]
    side = 2 * r + 2 * MARGIN
    return _document(side, side, _layers("page", emb.page_count, members, marks))


def export_svg(artifact, scale=400) -> str:
    if isinstance(artifact, Drawing):
        return drawing_svg(artifact, scale)
    if isinstance(artifact, BookEmbedding):
        return book_svg(artifact, scale)
    raise TypeError(f"cannot render {type(artifact).__name__}")
