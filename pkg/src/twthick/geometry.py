"""Exact rational geometry: points, sign predicates, squared distances, ray order.

Every decision is an exact sign test over ``gmpy2.mpq``; nothing here takes a
square root or compares floats.
"""
from __future__ import annotations

from functools import cmp_to_key
from typing import NamedTuple, Sequence

from gmpy2 import mpq

from . import kernels

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


class Point(NamedTuple):
    x: mpq
    y: mpq

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, t) -> "Point":
        return Point(self.x * t, self.y * t)

    def __neg__(self):
        return Point(-self.x, -self.y)


def point(x, y) -> Point:
    return Point(mpq(x), mpq(y))


def format_rational(q) -> str:
    q = mpq(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s) -> mpq:
    if isinstance(s, str):
        return mpq(s.strip())
    return mpq(s)


def cross(a: Point, b: Point):
    return a.x * b.y - a.y * b.x


def dot(a: Point, b: Point):
    return a.x * b.x + a.y * b.y


def norm2(a: Point):
    return a.x * a.x + a.y * a.y


def l1(a: Point):
    return abs(a.x) + abs(a.y)


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of (q - p) x (r - p): +1 left turn, -1 right turn, 0 collinear."""
    return kernels.orient(p.x, p.y, q.x, q.y, r.x, r.y)


def orientation(p: Point, q: Point, r: Point) -> str:
    return {1: "left", -1: "right", 0: "collinear"}[orient(p, q, r)]


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff closed segments ab and cd meet somewhere other than a shared endpoint.

    Touching and collinear overlap both count as crossing.
    """
    if a == b or c == d:
        raise ValueError("degenerate segment")
    if {a, b} == {c, d}:
        return True
    if a == c:
        code = 1
    elif a == d:
        code = 2
    elif b == c:
        code = 3
    elif b == d:
        code = 4
    else:
        code = 0
    return bool(kernels.seg_cross(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y, code))


def dist2_point_line(p: Point, a: Point, b: Point):
    d = b - a
    c = cross(d, p - a)
    return c * c / norm2(d)


def dist2_point_segment(p: Point, a: Point, b: Point):
    d = b - a
    t = dot(p - a, d) / norm2(d)
    if t <= 0:
        return norm2(p - a)
    if t >= 1:
        return norm2(p - b)
    return norm2(p - (a + d.scale(t)))


def dist2_point_ray(p: Point, a: Point, d: Point):
    """Squared distance from p to the closed ray a + s d, s >= 0."""
    t = dot(p - a, d) / norm2(d)
    if t <= 0:
        return norm2(p - a)
    return norm2(p - (a + d.scale(t)))


def dyadic_at_most_sqrt(x2) -> mpq:
    """Largest power of two e with e*e <= x2 (x2 > 0)."""
    x2 = mpq(x2)
    if x2 <= 0:
        raise ValueError("need a positive bound")
    e = (x2.numerator.bit_length() - x2.denominator.bit_length()) // 2
    eps = mpq(2) ** e if e >= 0 else mpq(1, 2 ** (-e))
    while eps * eps > x2:
        eps /= 2
    while 4 * eps * eps <= x2:
        eps *= 2
    return eps


def _half(d: Point) -> int:
    return 0 if d.y > 0 or (d.y == 0 and d.x > 0) else 1


def compare_directions(a: Point, b: Point) -> int:
    """Order directions counterclockwise starting from the positive x-axis."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


direction_key = cmp_to_key(compare_directions)


def ray_system(centre: Point, targets: dict[int, Point]) -> list[tuple[int, int]]:
    """Rays from ``centre`` to each target (+1) and their opposites (-1), counterclockwise.

    Returned as (target, sign) pairs starting from the positive x-axis.
    """
    rays = []
    for t, p in targets.items():
        d = p - centre
        rays.append((d, t, 1))
        rays.append((-d, t, -1))
    rays.sort(key=lambda r: direction_key(r[0]))
    return [(t, s) for _, t, s in rays]


def same_cyclic_order(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        i = list(b).index(a[0])
    except ValueError:
        return False
    rotated = list(b[i:]) + list(b[:i])
    return list(a) == rotated


def in_open_wedge(apex: Point, d1: Point, d2: Point, p: Point) -> bool:
    """Whether p lies in the open wedge swept from d1 to d2 through the lesser angle."""
    s = cross(d1, d2)
    if s == 0:
        raise ValueError("wedge boundary rays are collinear")
    q = p - apex
    c1 = cross(d1, q)
    c2 = cross(q, d2)
    if s > 0:
        return c1 > 0 and c2 > 0
    return c1 < 0 and c2 < 0


def general_position_violations(points: dict[int, Point], first_only: bool = False):
    ids = sorted(points)
    xs = [points[i].x for i in ids]
    ys = [points[i].y for i in ids]
    return [
        (ids[a], ids[b], ids[c])
        for a, b, c in kernels.collinear_triples(xs, ys, first_only)
    ]
