"""Straight-line drawings with exact coordinates, empty discs and safe perturbation radii."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from gmpy2 import mpq

from . import kernels
from .geometry import (
    Point,
    cross,
    dist2_point_line,
    dist2_point_ray,
    dist2_point_segment,
    dot,
    dyadic_at_most_sqrt,
    format_rational,
    l1,
    norm2,
    parse_rational,
    ray_system,
    same_cyclic_order,
)
from .graph import Edge, Graph, edge, edge_key, parse_edge_key


@dataclass
class Drawing:
    """Vertex positions plus an edge colouring. Treated as immutable once built."""

    pos: dict[int, Point]
    colour_of: dict[Edge, int]
    colour_count: int
    _adj: dict[int, set[int]] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.pos.values())) != len(self.pos):
            raise ValueError("two vertices share a position")
        for (u, v), c in self.colour_of.items():
            if u not in self.pos or v not in self.pos:
                raise ValueError(f"edge {u}-{v} has an unplaced endpoint")
            if not 1 <= c <= self.colour_count:
                raise ValueError(f"edge {u}-{v} has colour {c} outside 1..{self.colour_count}")

    @property
    def adj(self) -> dict[int, set[int]]:
        if self._adj is None:
            adj: dict[int, set[int]] = {v: set() for v in self.pos}
            for u, v in self.colour_of:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return self._adj

    @property
    def edges(self) -> list[Edge]:
        return sorted(self.colour_of)

    def graph(self) -> Graph:
        return Graph.from_edges(max(self.pos, default=-1) + 1, self.colour_of)

    def colour_class(self, c: int) -> list[Edge]:
        return sorted(e for e, col in self.colour_of.items() if col == c)

    def restrict(self, edges: Iterable[Edge], colour_count: int | None = None) -> "Drawing":
        keep = {edge(*e): self.colour_of[edge(*e)] for e in edges}
        cc = colour_count if colour_count is not None else max(keep.values(), default=1)
        return Drawing(dict(self.pos), keep, max(cc, 1))

    def to_json(self) -> dict:
        return {
            "positions": {
                str(v): [format_rational(p.x), format_rational(p.y)]
                for v, p in sorted(self.pos.items())
            },
            "colours": {edge_key(e): c for e, c in sorted(self.colour_of.items())},
            "colour_count": self.colour_count,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Drawing":
        pos = {
            int(v): Point(parse_rational(xy[0]), parse_rational(xy[1]))
            for v, xy in data["positions"].items()
        }
        colours = {parse_edge_key(k): int(c) for k, c in data["colours"].items()}
        return cls(pos, colours, int(data["colour_count"]))


# ---------------------------------------------------------------- empty discs

def _min_line_dist2(p: Point, pts: list[Point]):
    xs = [q.x for q in pts]
    ys = [q.y for q in pts]
    return kernels.min_line_dist2(p.x, p.y, xs, ys)


def epsilon_violations(pos: dict[int, Point], adj: dict[int, set[int]], edges: Iterable[Edge], v: int, eps) -> list[tuple]:
    """Which of the four empty-disc properties fail for D_eps(v); empty list means none."""
    e2 = eps * eps
    pv = pos[v]
    nbrs = sorted(adj.get(v, ()))
    others = [x for x in pos if x != v]
    bad: list[tuple] = []
    # (a) no vertex in the shadow cones from the neighbours through the disc
    for x in others:
        px = pos[x]
        for u in nbrs:
            if u != x and dist2_point_ray(pv, px, px - pos[u]) < e2:
                bad.append(("shadow", x, u))
    # (b) non-incident edges avoid the disc
    for a, b in edges:
        if v != a and v != b and dist2_point_segment(pv, pos[a], pos[b]) < e2:
            bad.append(("edge", a, b))
    # (c) no line through two other vertices meets the disc
    for a, b in combinations(others, 2):
        if dist2_point_line(pv, pos[a], pos[b]) < e2:
            bad.append(("line", a, b))
    # (d) the ray order around v is the same at the extreme points of the disc
    if nbrs:
        targets = {u: pos[u] for u in nbrs}
        ref = ray_system(pv, targets)
        r = eps * mpq(1023, 1024)
        for dx, dy in ((r, 0), (-r, 0), (0, r), (0, -r)):
            q = Point(pv.x + dx, pv.y + dy)
            if not same_cyclic_order(ref, ray_system(q, targets)):
                bad.append(("order", (dx, dy)))
    return bad


def empty_radius(pos: dict[int, Point], adj: dict[int, set[int]], edges: Iterable[Edge], v: int, verify: bool = True):
    """A power of two strictly below half the least distance from v to a line through
    two other vertices, then halved until the exact property check passes.

    Every ray, segment and vertex distance in the four properties is at least a
    line distance, so with ``verify=False`` the candidate is returned directly.
    """
    edges = list(edges)
    pv = pos[v]
    others = [pos[x] for x in pos if x != v]
    if not others:
        return mpq(1)
    m2 = _min_line_dist2(pv, others)
    if m2 is None:
        m2 = norm2(others[0] - pv)
    if m2 == 0:
        raise ValueError(f"vertex {v} is collinear with two other vertices")
    eps = dyadic_at_most_sqrt(m2 / 4)
    if eps * eps * 4 == m2:
        eps /= 2
    if not verify:
        return eps
    for _ in range(64):
        if not epsilon_violations(pos, adj, edges, v, eps):
            return eps
        eps /= 2
    raise RuntimeError("no empty radius found")  # pragma: no cover


def epsilon_empty(d: Drawing, v: int):
    """A dyadic radius eps for which v is eps-empty in the general-position drawing d."""
    if v not in d.pos:
        raise KeyError(v)
    return empty_radius(d.pos, d.adj, d.colour_of, v)


# ---------------------------------------------------------- perturbation radius

def _robust(value, span, eps) -> bool:
    return abs(value) > 2 * eps * span + 4 * eps * eps


def _robust_bound2(value, span):
    """Square of a radius below which ``_robust`` holds."""
    v = abs(value)
    a = v / (4 * span)
    return min(a * a, v / 8)


def _seg_dist2(p, q, r, s):
    return min(
        dist2_point_segment(p, r, s),
        dist2_point_segment(q, r, s),
        dist2_point_segment(r, p, q),
        dist2_point_segment(s, p, q),
    )


def _perturbation_checks(pos, classes, movable):
    """Yield (kind, value, span) constraints for each edge class."""
    ids = sorted(pos)
    mov = set(movable)
    for a, b in combinations(ids, 2):
        if a in mov or b in mov:
            yield ("pair", norm2(pos[a] - pos[b]), None)
    for m in sorted(mov):
        pm = pos[m]
        rest = [x for x in ids if x != m and not (x in mov and x < m)]
        for a, b in combinations(rest, 2):
            da, db = pos[a] - pm, pos[b] - pm
            c = cross(da, db)
            if c != 0:
                yield ("robust", c, l1(da) + l1(db))
    for edges in classes:
        yield from _edge_checks(pos, edges, mov)


def _edge_checks(pos, edges, mov):
    for e, f in combinations(edges, 2):
        if not (mov & {e[0], e[1], f[0], f[1]}):
            continue
        shared = {e[0], e[1]} & {f[0], f[1]}
        if shared:
            (a,) = shared
            b = e[0] if e[1] == a else e[1]
            c = f[0] if f[1] == a else f[1]
            db, dc = pos[b] - pos[a], pos[c] - pos[a]
            if cross(db, dc) == 0:
                yield ("robust_neg", dot(db, dc), l1(db) + l1(dc))
        else:
            p, q, r, s = pos[e[0]], pos[e[1]], pos[f[0]], pos[f[1]]
            if 0 in (cross(q - p, r - p), cross(q - p, s - p), cross(s - r, p - r), cross(s - r, q - r)):
                yield ("gap", _seg_dist2(p, q, r, s), None)


def _radius_ok(checks, eps) -> bool:
    e2 = eps * eps
    for kind, value, span in checks:
        if kind == "pair" or kind == "gap":
            if value <= 4 * e2:
                return False
        elif kind == "robust":
            if not _robust(value, span, eps):
                return False
        elif value >= 0 or not _robust(value, span, eps):
            return False
    return True


def radius_for(pos: dict[int, Point], edges: Iterable[Edge], movable: Iterable[int] | None = None, check: bool = True):
    """Radius eps such that moving each movable vertex within its open eps-disc
    keeps ``edges`` noncrossing and creates no new collinear triple."""
    return radius_for_classes(pos, [edges], movable, check)


def radius_for_classes(pos, classes, movable=None, check: bool = True):
    """Like ``radius_for`` with several edge classes, each required to stay noncrossing."""
    classes = [[edge(*e) for e in c] for c in classes]
    if check:
        for edges in classes:
            crossing = first_crossing(pos, edges)
            if crossing is not None:
                raise ValueError(f"edges {crossing[0]} and {crossing[1]} cross")
    mov = sorted(pos) if movable is None else sorted(set(movable))
    checks = list(_perturbation_checks(pos, classes, mov))
    if not checks:
        return mpq(1)
    bound2 = None
    for kind, value, span in checks:
        if kind in ("pair", "gap"):
            b = value / 16
        else:
            if value == 0 or (kind == "robust_neg" and value > 0):
                raise ValueError("edges overlap")
            b = _robust_bound2(value, span)
        bound2 = b if bound2 is None or b < bound2 else bound2
    if bound2 == 0:
        raise ValueError("degenerate drawing")
    eps = dyadic_at_most_sqrt(bound2) / 2
    for _ in range(64):
        if _radius_ok(checks, eps):
            return eps
        eps /= 2
    raise RuntimeError("no perturbation radius found")  # pragma: no cover


def perturbation_radius(d: Drawing, colour: int | None = None, movable: Iterable[int] | None = None):
    """Safe perturbation radius for the noncrossing drawing d (or one colour class of it)."""
    edges = d.colour_class(colour) if colour is not None else d.edges
    return radius_for(d.pos, edges, movable)


# ---------------------------------------------------------------- helpers

def segs(pos: dict[int, Point], edges: Iterable[Edge]):
    return [(u, v, pos[u].x, pos[u].y, pos[v].x, pos[v].y) for u, v in edges]


def first_crossing(pos: dict[int, Point], edges: list[Edge]):
    hits = kernels.crossing_pairs(segs(pos, edges), True, 0)
    if hits:
        i, j = hits[0]
        return edges[i], edges[j]
    return None


def clockwise_neighbours(pos: dict[int, Point], v: int, nbrs: Iterable[int]) -> list[int]:
    """Neighbours of v in clockwise order, starting just clockwise of the positive x-axis."""
    targets = {u: pos[u] for u in nbrs}
    ccw = [t for t, s in ray_system(pos[v], targets) if s == 1]
    return ccw[::-1]


def fan_labelling(d: Drawing, v: int) -> list[int] | None:
    """Neighbours of v as (u_1..u_k, u_-1..u_-k) witnessing that v is a fan, or None.

    v is balanced when every ray to a neighbour is consecutive with the opposite
    ray of the neighbour k places further clockwise. It is a fan when in addition
    the edges to u_i and u_-i both have colour i.
    """
    return labelling_at(d.pos, d.adj.get(v, set()), d.colour_of, v)


def labelling_at(pos, nbrs, colour_of, v) -> list[int] | None:
    if len(nbrs) % 2 or not nbrs:
        return None
    k = len(nbrs) // 2
    targets = {u: pos[u] for u in nbrs}
    rays = ray_system(pos[v], targets)[::-1]
    n = [t for t, s in rays if s == 1]
    where = {r: i for i, r in enumerate(rays)}
    m = len(rays)
    for j in range(2 * k):
        a = where[(n[j], 1)]
        b = where[(n[(j + k) % (2 * k)], -1)]
        if (a - b) % m not in (1, m - 1):
            return None
    colours = [colour_of[edge(v, u)] for u in n]
    if any(colours[j] != colours[j + k] for j in range(k)):
        return None
    for s in range(2 * k):
        if all(colours[(s + j) % (2 * k)] == j + 1 for j in range(k)):
            return [n[(s + j) % (2 * k)] for j in range(2 * k)]
    return None
