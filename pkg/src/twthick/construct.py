"""Recursive drawing constructions for k-trees: planar, forest and thickness layouts."""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable

from gmpy2 import mpq

from . import kernels
from .book import zigzag_page
from .drawing import Drawing, empty_radius, labelling_at, radius_for_classes
from .geometry import (
    Point,
    cross,
    dyadic_at_most_sqrt,
    in_open_wedge,
    l1,
    norm2,
    orient,
    ray_system,
)
from .graph import CaseA, CaseB, Edge, KTreeBuild, edge, ktree_lift, partition_chain


class ConstructionError(RuntimeError):
    """An internal placement step could not be completed."""


_MAX_HALVINGS = 200
# slopes tried in turn along a ray; a ray meets any line it does not lie on at most once
_TILTS = (mpq(0), mpq(1, 4), mpq(-1, 8), mpq(3, 16))


def _snap(p: Point, scale) -> Point:
    """Round p down to a dyadic grid much finer than ``scale``.

    Keeping every coordinate dyadic stops denominators from compounding
    across levels of the recursion; each caller re-checks the snapped point.
    """
    unit = dyadic_at_most_sqrt(scale * scale) / 4096
    inv = 1 / unit
    return Point(
        mpq((p.x * inv).numerator // (p.x * inv).denominator) * unit,
        mpq((p.y * inv).numerator // (p.y * inv).denominator) * unit,
    )


class _Canvas:
    """Mutable drawing state used while a construction runs."""

    def __init__(self, colour_count: int):
        self.colour_count = colour_count
        self.pos: dict[int, Point] = {}
        self.colour: dict[Edge, int] = {}
        self.adj: dict[int, set[int]] = defaultdict(set)
        self.by_colour: dict[int, set[Edge]] = defaultdict(set)
        self.index: dict[int, int] = {}
        self.xs: list = []
        self.ys: list = []

    @classmethod
    def of(cls, d: Drawing) -> "_Canvas":
        c = cls(d.colour_count)
        for v, p in d.pos.items():
            c.place(v, p)
        for e, col in d.colour_of.items():
            c.link(e[0], e[1], col)
        return c

    def place(self, v: int, p: Point) -> None:
        self.pos[v] = p
        self.adj[v]
        self.index[v] = len(self.xs)
        self.xs.append(p.x)
        self.ys.append(p.y)

    def move(self, v: int, p: Point) -> None:
        self.pos[v] = p
        i = self.index[v]
        self.xs[i] = p.x
        self.ys[i] = p.y

    def link(self, u: int, v: int, c: int) -> None:
        e = edge(u, v)
        old = self.colour.get(e)
        if old is not None:
            self.by_colour[old].discard(e)
        self.colour[e] = c
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.by_colour[c].add(e)

    def unlink(self, u: int, v: int) -> None:
        e = edge(u, v)
        c = self.colour.pop(e)
        self.by_colour[c].discard(e)
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def on_line(self, p: Point, skip: Iterable[tuple[int, int]] = (), ignore: int | None = None) -> bool:
        """Whether p is collinear with two placed vertices (other than ``ignore``)."""
        xs, ys = self.xs, self.ys
        cut = None
        if ignore is not None:
            cut = self.index[ignore]
            xs = xs[:cut] + xs[cut + 1:]
            ys = ys[:cut] + ys[cut + 1:]
        sk = set()
        for a, b in skip:
            i, j = self.index[a], self.index[b]
            if cut is not None:
                i, j = (i - (i > cut)), (j - (j > cut))
            sk.add((min(i, j), max(i, j)))
        return kernels.point_on_pair_line(p.x, p.y, xs, ys, sk) is not None

    def crossings(self, p: Point, links: dict[int, int], w: int = -1) -> bool:
        """Whether segments from p (standing for vertex w) to the linked vertices
        cross an existing edge of the same colour or each other."""
        for u, c in links.items():
            pu = self.pos[u]
            segs = [
                (a, b, self.pos[a].x, self.pos[a].y, self.pos[b].x, self.pos[b].y)
                for a, b in self.by_colour[c]
                if a != w and b != w
            ]
            segs.append((w, u, p.x, p.y, pu.x, pu.y))
            if kernels.crossing_pairs(segs, True, len(segs) - 1):
                return True
        return False

    def empty_radius(self, v: int):
        return empty_radius(self.pos, self.adj, self.colour, v, verify=False)

    def drawing(self) -> Drawing:
        return Drawing(dict(self.pos), dict(self.colour), self.colour_count)


def _check_colour_classes(c: _Canvas, new_vertices: Iterable[int]) -> None:
    """Raise unless edges at the new vertices avoid every same-coloured edge."""
    for w in new_vertices:
        links = {u: c.colour[edge(w, u)] for u in c.adj[w]}
        if c.crossings(c.pos[w], links, w):
            raise ConstructionError(f"edges at vertex {w} cross an edge of the same colour")


# ------------------------------------------------------------------ planar

def draw_planar_2tree(build: KTreeBuild) -> Drawing:
    """Noncrossing one-colour drawing of a 1-tree or 2-tree, in general position."""
    if build.k not in (1, 2):
        raise ValueError("planar drawings are built for k = 1 or 2 only")
    c = _Canvas(1)
    base = list(build.base)
    corners = [Point(mpq(0), mpq(0)), Point(mpq(1), mpq(0)), Point(mpq(0), mpq(1))]
    for v, p in zip(base, corners):
        c.place(v, p)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        if b < len(base):
            c.link(base[a], base[b], 1)
    for w, clique in build.additions:
        if build.k == 1:
            _attach_leaf(c, w, clique[0])
        else:
            _attach_near_edge(c, w, clique[0], clique[1])
    return c.drawing()


def _attach_leaf(c: _Canvas, w: int, parent: int) -> None:
    pp = c.pos[parent]
    t = c.empty_radius(parent) / 2
    spread = mpq(len(c.adj[parent]), 16)
    for _ in range(_MAX_HALVINGS):
        for a in _TILTS:
            p = Point(pp.x + t, pp.y + t * (spread + a))
            if not c.on_line(p) and not c.crossings(p, {parent: 1}):
                c.place(w, p)
                c.link(w, parent, 1)
                return
        t /= 2
    raise ConstructionError(f"could not place leaf {w}")


def _attach_near_edge(c: _Canvas, w: int, a: int, b: int) -> None:
    pa, pb = c.pos[a], c.pos[b]
    d = pb - pa
    perp = Point(-d.y, d.x)
    mid = Point((pa.x + pb.x) / 2, (pa.y + pb.y) / 2)
    t = mpq(1, 2)
    for _ in range(_MAX_HALVINGS):
        for side in (1, -1):
            for tilt in _TILTS:
                p = mid + (perp.scale(side) + d.scale(tilt)).scale(t)
                if c.crossings(p, {a: 1, b: 1}):
                    break
                if not c.on_line(p):
                    c.place(w, p)
                    c.link(w, a, 1)
                    c.link(w, b, 1)
                    return
        t /= 2
    raise ConstructionError(f"could not place vertex {w} beside edge {a}-{b}")


# ------------------------------------------------------------------ forests

def draw_forests(build: KTreeBuild) -> Drawing:
    """General-position drawing with k colour classes, each a noncrossing forest."""
    k = build.k
    g = build.graph
    chain = partition_chain(g, k)
    vs, case = chain[-1]
    U = sorted(vs - case.S)
    S = sorted(case.S)
    c = _Canvas(k)
    for i, v in enumerate(U + S):
        c.place(v, Point(mpq(i), mpq(i * i)))
    for a, b in g.edges:
        if a in vs and b in vs:
            ia = U.index(a) + 1 if a in U else None
            ib = U.index(b) + 1 if b in U else None
            c.link(a, b, min(x for x in (ia, ib) if x is not None))
    for vs, case in reversed(chain[:-1]):
        _forest_step(c, g, case)
    return c.drawing()


def _forest_step(c: _Canvas, g, case: CaseB) -> None:
    v = case.pivot_v
    nbrs = sorted(c.adj[v])
    cols = {u: c.colour[edge(v, u)] for u in nbrs}
    if len(set(cols.values())) != len(nbrs):
        raise ConstructionError(f"pivot {v} is not colourful")
    groups: dict[int, list[int]] = defaultdict(list)
    for w in sorted(case.S):
        (missing,) = set(nbrs) - g.adj[w]
        groups[missing].append(w)
    pv = c.pos[v]
    eps = c.empty_radius(v)
    # power-of-two normalised so a neighbour sitting close to v does not shrink the step
    dirs = {u: _dyadic_unit(c.pos[u] - pv) for u in nbrs}
    longest = max(l1(d) for d in dirs.values())
    t = dyadic_at_most_sqrt((eps / (2 * longest)) ** 2)
    eta = mpq(1, 4)
    for _ in range(_MAX_HALVINGS):
        if _wedges_disjoint(dirs, eta):
            break
        eta /= 2
    else:
        raise ConstructionError(f"wedges at pivot {v} overlap")
    for _ in range(_MAX_HALVINGS):
        placed = _try_forest_batch(c, v, groups, dirs, cols, t, eta)
        if placed:
            return
        t /= 2
        eta /= 2
    raise ConstructionError(f"could not place the vertices beside pivot {v}")


def _dyadic_unit(d: Point) -> Point:
    """d scaled by a power of two to l1 length in [1, 2)."""
    return d.scale(1 / dyadic_at_most_sqrt(l1(d) ** 2))


def _wedges_disjoint(dirs: dict[int, Point], eta) -> bool:
    bounds = []
    for u, d in dirs.items():
        o = -d
        p = Point(-o.y, o.x)
        bounds.append((o - p.scale(eta), u, 0))
        bounds.append((o + p.scale(eta), u, 1))
    if len(bounds) <= 2:
        return True
    from .geometry import direction_key

    bounds.sort(key=lambda b: direction_key(b[0]))
    m = len(bounds)
    start = next(i for i in range(m) if bounds[i][2] == 0)
    seq = bounds[start:] + bounds[:start]
    return all(
        seq[i][1] == seq[i + 1][1] and seq[i][2] == 0 and seq[i + 1][2] == 1
        and cross(seq[i][0], seq[i + 1][0]) > 0
        for i in range(0, m, 2)
    )


def _try_forest_batch(c, v, groups, dirs, cols, t, eta) -> bool:
    pv = c.pos[v]
    added = []

    def undo():
        for w in reversed(added):
            for u in list(c.adj[w]):
                c.unlink(w, u)
            del c.pos[w]
            del c.adj[w]
            c.xs.pop()
            c.ys.pop()
            del c.index[w]

    for u, members in sorted(groups.items()):
        d = dirs[u]
        p = Point(-d.y, d.x)
        m = len(members)
        for j, w in enumerate(members):
            tj = t / 2 ** j
            ej = eta * (j + 1) / (m + 2)
            q = _snap(pv + (p.scale(ej) - d).scale(tj), tj * ej * l1(p))
            links = {x: cols[x] for x in cols if x != u}
            links[v] = cols[u]
            if c.on_line(q) or c.crossings(q, links):
                undo()
                return False
            c.place(w, q)
            for x, col in links.items():
                c.link(w, x, col)
            added.append(w)
    return True


# ----------------------------------------------------------------- thickness

def _circle_point(angle: float, bits: int = 20) -> Point:
    """Dyadic point within 2**-bits of the unit-circle point at ``angle``."""
    scale = 1 << bits
    return Point(mpq(round(math.cos(angle) * scale), scale), mpq(round(math.sin(angle) * scale), scale))


def base_complete_odd(k: int, fan_vertex: int = 0, vertices: Iterable[int] | None = None) -> Drawing:
    """Good drawing of K_{2k+1} with ``fan_vertex`` a fan.

    The other 2k vertices sit on the unit circle with antipodal pairs; the fan
    vertex goes just beside the centre where the k diameters meet.
    """
    if k < 2:
        raise ValueError("the odd complete base case needs k >= 2")
    verts = sorted(range(2 * k + 1) if vertices is None else set(vertices))
    if len(verts) != 2 * k + 1 or fan_vertex not in verts:
        raise ValueError("need 2k+1 vertices including the fan vertex")
    us = [x for x in verts if x != fan_vertex]
    # clockwise around the circle: u_1..u_k on the upper half, u_{k+i} = -u_i
    half = []
    for i in range(1, k + 1):
        half.append(_circle_point(math.pi - math.pi * (i - 0.5) / k))
    pts = half + [Point(-p.x, -p.y) for p in half]
    for alpha_first in range(2 * k):
        c = _Canvas(k)
        for idx, u in enumerate(us):
            c.place(u, pts[idx])
        for a in range(2 * k):
            for b in range(a + 1, 2 * k):
                c.link(us[a], us[b], zigzag_page(a + 1, b + 1, k))
        vp = _point_beside_centre(pts, alpha_first)
        if vp is None:
            continue
        c.place(fan_vertex, vp)
        for a in range(2 * k):
            # the pair u_i, u_-i takes the colour of the diameter joining them
            i = a + 1 if a < k else a + 1 - k
            c.link(fan_vertex, us[a], zigzag_page(i, i + k, k))
        if _classes_noncrossing(c) and labelling_at(c.pos, c.adj[fan_vertex], c.colour, fan_vertex):
            return c.drawing()
    raise ConstructionError("no sector beside the centre gives a fan")  # pragma: no cover


def _point_beside_centre(pts: list[Point], j: int) -> Point | None:
    n = len(pts)
    a, b = pts[j], pts[(j + 1) % n]
    origin = Point(mpq(0), mpq(0))
    r = mpq(1, 4)
    for _ in range(_MAX_HALVINGS):
        p = (a + b).scale(r) + a.scale(r * r)
        ok = True
        for x in range(n):
            for y in range(x + 1, n):
                o = orient(pts[x], pts[y], p)
                if o == 0:
                    ok = False
                    break
                if y - x != n // 2 and o != orient(pts[x], pts[y], origin):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return p
        r /= 2
    return None


def _classes_noncrossing(c: _Canvas) -> bool:
    for col, es in c.by_colour.items():
        es = sorted(es)
        segs = [(a, b, c.pos[a].x, c.pos[a].y, c.pos[b].x, c.pos[b].y) for a, b in es]
        if kernels.crossing_pairs(segs, True, 0):
            return False
    return True


def _fan_sector(c: _Canvas, v: int, lab: list[int]):
    """Boundary directions of the first gap clockwise after ray(v, u_1) that lies outside every wedge."""
    k = len(lab) // 2
    partner = {lab[j]: lab[(j + k) % (2 * k)] for j in range(2 * k)}
    pv = c.pos[v]
    rays = ray_system(pv, {u: c.pos[u] for u in lab})[::-1]
    m = len(rays)
    start = rays.index((lab[0], 1))
    for step in range(m):
        r1 = rays[(start + step) % m]
        r2 = rays[(start + step + 1) % m]
        wedge = (r1[1] == 1 and r2 == (partner[r1[0]], -1)) or (
            r2[1] == 1 and r1 == (partner[r2[0]], -1)
        )
        if not wedge:
            d1 = (c.pos[r1[0]] - pv).scale(r1[1])
            d2 = (c.pos[r2[0]] - pv).scale(r2[1])
            return d1, d2
    raise ConstructionError(f"vertex {v} has no free sector")  # pragma: no cover


def _insert_copy(c: _Canvas, v: int, w: int) -> None:
    lab = labelling_at(c.pos, c.adj[v], c.colour, v)
    if lab is None:
        raise ValueError(f"vertex {v} is not a fan")
    d1, d2 = _fan_sector(c, v, lab)
    e1 = d1.scale(1 / l1(d1))
    e2 = d2.scale(1 / l1(d2))
    pv = c.pos[v]
    eps = c.empty_radius(v)
    t = eps / 4
    links = {u: c.colour[edge(v, u)] for u in lab}
    # each earlier copy blocks one direction from v, so offer one more mix than there are vertices
    mixes = [mpq(1)] + [mpq(j, j + 1) ** s for j in range(1, len(c.pos) + 2) for s in (1, -1)]
    for _ in range(_MAX_HALVINGS):
        for a in mixes:
            # a positive mix of the two boundary directions stays inside the sector
            p = _snap(pv + (e1 + e2.scale(a)).scale(t), t)
            if p == pv or not in_open_wedge(pv, d1, d2, p) or norm2(p - pv) >= eps * eps:
                continue
            if not c.on_line(p):
                if c.crossings(p, links):
                    raise ConstructionError(f"copy of fan {v} crosses an edge of its colour")
                c.place(w, p)
                for u, col in links.items():
                    c.link(w, u, col)
                return
        t /= 2
    raise ConstructionError(f"could not insert a copy of fan {v}")  # pragma: no cover


def insert_fan_copy(d: Drawing, fan_v: int, new_w: int) -> Drawing:
    """Add ``new_w`` adjacent to the neighbours of the fan ``fan_v``, keeping the drawing good."""
    if new_w in d.pos:
        raise ValueError(f"vertex {new_w} already placed")
    c = _Canvas.of(d)
    _insert_copy(c, fan_v, new_w)
    return c.drawing()


def good_draw(build: KTreeBuild) -> Drawing:
    """Good drawing of a 2k-tree with k colours (k >= 2): every simplicial vertex a fan."""
    if build.k % 2 or build.k < 4:
        raise ValueError("good drawings need an even tree parameter of at least 4")
    k = build.k // 2
    g = build.graph
    chain = partition_chain(g, build.k)
    vs, case = chain[-1]
    S = sorted(case.S)
    fan = S[0]
    clique = sorted(vs - case.S)
    c = _Canvas.of(base_complete_odd(k, fan, clique + [fan]))
    for w in S[1:]:
        _insert_copy(c, fan, w)
    for vs, case in reversed(chain[:-1]):
        _good_step(c, g, k, case)
    return c.drawing()


def _good_step(c: _Canvas, g, k: int, case: CaseB) -> None:
    v = case.pivot_v
    lab = labelling_at(c.pos, c.adj[v], c.colour, v)
    if lab is None:
        raise ConstructionError(f"pivot {v} is not a fan")
    # label index i in I = {1..k, -1..-k}
    u = {}
    for j in range(k):
        u[j + 1] = lab[j]
        u[-(j + 1)] = lab[k + j]
    label_of = {x: i for i, x in u.items()}
    groups: dict[int, list[int]] = defaultdict(list)
    for w in sorted(case.S):
        (missing,) = set(lab) - g.adj[w]
        groups[label_of[missing]].append(w)
    order = [i for i in list(range(1, k + 1)) + list(range(-1, -k - 1, -1)) if i in groups]
    x = {i: groups[i][0] for i in order}

    pv = c.pos[v]
    eps = c.empty_radius(v)
    for i in u:
        c.unlink(v, u[i])
    t = None
    placed: list[int] = []
    for i in order:
        # normalised like the forest step, so successive x_i really do get closer to v
        d = _dyadic_unit(c.pos[u[-i]] - pv)
        cap = dyadic_at_most_sqrt(eps * eps / norm2(d)) / 2
        t = cap if t is None else min(cap, t / 2)
        for _ in range(_MAX_HALVINGS):
            p = pv + d.scale(t)
            if _x_position_ok(c, u, x, placed, i, p, v):
                break
            t /= 2
        else:
            raise ConstructionError(f"could not place vertex {x[i]} on the segment")
        c.place(x[i], p)
        c.link(x[i], v, abs(i))
        for j in u:
            if j != i:
                c.link(x[i], u[j], abs(j))
        placed.append(i)

    movable = [x[i] for i in order]
    on_segment = {i: c.pos[x[i]] for i in order}
    if not _move_off_segments(c, v, u, x, order, on_segment):
        for i in order:
            c.move(x[i], on_segment[i])
        classes = [sorted(c.by_colour[r]) for r in range(1, k + 1)]
        delta = radius_for_classes(c.pos, classes, movable, check=True)
        for i in order:
            away = pv - c.pos[u[i]]
            s = dyadic_at_most_sqrt(delta * delta / norm2(away)) / 2
            c.move(x[i], on_segment[i] + away.scale(s))
        for i in u:
            c.link(v, u[i], abs(i))
    for i in order:
        if c.on_line(c.pos[x[i]], ignore=x[i]):
            raise ConstructionError(f"vertex {x[i]} is collinear with two others")
    _check_colour_classes(c, [v] + movable)
    for i in order:
        for w in groups[i][1:]:
            _insert_copy(c, x[i], w)


def _move_off_segments(c: _Canvas, v, u, x, order, on_segment) -> bool:
    """Move each x_i off its segment by a step comparable to its distance from v.

    The guaranteed radius from the perturbation bound shrinks quadratically,
    which would square coordinate scales at every level. Larger moves checked
    exactly usually succeed; on failure the caller falls back to the bound.
    Leaves the pivot edges restored when it returns True.
    """
    pv = c.pos[v]
    for i in order:
        away = pv - c.pos[u[i]]
        reach = norm2(on_segment[i] - pv)
        s = dyadic_at_most_sqrt(reach / (4 * norm2(away)))
        links = {y: c.colour[edge(x[i], y)] for y in c.adj[x[i]]}
        for _ in range(40):
            p = on_segment[i] + away.scale(s)
            if not c.on_line(p, ignore=x[i]) and not c.crossings(p, links, x[i]):
                c.move(x[i], p)
                break
            s /= 2
        else:
            return False
    for i in u:
        c.link(v, u[i], abs(i))
    links = {u[i]: abs(i) for i in u}
    if c.crossings(pv, links, v) or any(
        labelling_at(c.pos, c.adj[x[i]], c.colour, x[i]) is None for i in order
    ):
        for i in u:
            c.unlink(v, u[i])
        return False
    return True


def _wedge_at(c: _Canvas, apex: Point, a: int, b: int):
    """Directions of ray(apex, a) and the ray opposite to b."""
    return c.pos[a] - apex, apex - c.pos[b]


def _x_position_ok(c: _Canvas, u, x, placed, i, p: Point, v: int) -> bool:
    # Two same-coloured edges x_j u_r and x_l u_-r can only cross when each of
    # x_j, x_l lies in a wedge of the other, so keeping every new x out of the
    # wedges of the earlier ones is enough.
    if c.on_line(p, skip=[(v, u[-i])]):
        return False
    for l in placed:
        pl = c.pos[x[l]]
        for j in u:
            if j in (l, -l):
                continue
            d1, d2 = _wedge_at(c, pl, u[j], u[-j])
            if cross(d1, d2) == 0 or in_open_wedge(pl, d1, d2, p):
                return False
    return True


def draw_thickness(build: KTreeBuild) -> Drawing:
    """Drawing with ceil(k/2) colour classes, each noncrossing."""
    k = build.k
    if k <= 2:
        return draw_planar_2tree(build)
    if k % 2 == 0:
        return good_draw(build)
    lifted = good_draw(ktree_lift(build))
    n = build.n
    keep = {e: col for e, col in lifted.colour_of.items() if e[0] < n and e[1] < n}
    orig = build.graph.edges
    keep = {e: col for e, col in keep.items() if e in orig}
    return Drawing({v: p for v, p in lifted.pos.items() if v < n}, keep, (k + 1) // 2)
