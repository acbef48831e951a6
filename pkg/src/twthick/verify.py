"""Independent checks for embeddings and drawings, plus witness-producing refuters.

Everything here reads only the serialisable artifacts (graphs, book embeddings,
drawings, colourings) and never reuses construction state.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil
from typing import Hashable, Iterable, Mapping

from . import kernels
from .book import BookEmbedding
from .drawing import Drawing, fan_labelling, segs
from .graph import (
    Edge,
    Graph,
    KTreeBuild,
    PartitionCase,
    StarGadget,
    check_partition_case,
    edge,
)
from .planarity import is_outerplanar, is_planar

MODES = ("noncrossing", "forest", "star_forest")


@dataclass
class Report:
    violations: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, kind: str, *detail) -> None:
        self.violations.append((kind, *detail))

    def kinds(self) -> set[str]:
        return {v[0] for v in self.violations}

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [{"kind": v[0], "detail": _plain(v[1:])} for v in self.violations],
        }

    def __bool__(self) -> bool:
        return self.passed


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


@dataclass(frozen=True)
class MonoWitness:
    kind: str
    vertices: tuple[int, ...]
    colour: Hashable

    def edges(self) -> list[Edge]:
        v = self.vertices
        if self.kind == "K33":
            return [edge(a, b) for a in v[:3] for b in v[3:]]
        if self.kind == "K23":
            return [edge(a, b) for a in v[:2] for b in v[2:]]
        if self.kind == "P4":
            return [edge(v[i], v[i + 1]) for i in range(3)]
        if self.kind == "C4":
            return [edge(v[i], v[(i + 1) % 4]) for i in range(4)]
        raise ValueError(f"unknown witness kind {self.kind}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "colour": _plain(self.colour)}


def validate_witness(w: MonoWitness, g: Graph, colouring: Mapping[Edge, Hashable]) -> bool:
    sizes = {"K33": 6, "K23": 5, "P4": 4, "C4": 4}
    if w.kind not in sizes or len(w.vertices) != sizes[w.kind] or len(set(w.vertices)) != sizes[w.kind]:
        return False
    return all(g.has_edge(*e) and colouring.get(e) == w.colour for e in w.edges())


# ---------------------------------------------------------------- class shapes

def _shape_violations(edges: list[Edge], mode: str) -> list[tuple]:
    if mode == "noncrossing":
        return []
    parent: dict[int, int] = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    out = []
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            out.append(("cycle", (a, b)))
        else:
            parent[ra] = rb
    if mode == "star_forest" and not out:
        deg: dict[int, int] = defaultdict(int)
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        centres: dict[int, list[int]] = defaultdict(list)
        for x, dx in deg.items():
            if dx >= 2:
                centres[find(x)].append(x)
        for members in centres.values():
            if len(members) > 1:
                out.append(("not_star", tuple(sorted(members))))
    return out


def _coverage(edges: Iterable[Edge], g: Graph) -> None:
    have = set(edges)
    if have != set(g.edges):
        missing = sorted(set(g.edges) - have)[:3]
        extra = sorted(have - set(g.edges))[:3]
        raise ValueError(f"edge sets differ: missing {missing}, extra {extra}")


def check_book(emb: BookEmbedding, g: Graph, mode: str = "noncrossing") -> Report:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    _coverage(emb.page_of, g)
    if set(emb.order) != set(range(g.vertex_count)):
        raise ValueError("order is not a permutation of the vertices")
    rep = Report()
    pos = [0] * g.vertex_count
    for i, v in enumerate(emb.order):
        pos[v] = i
    for p, es in emb.pages().items():
        nbrs = kernels.book_conflicts(pos, [e[0] for e in es], [e[1] for e in es])
        for i, row in enumerate(nbrs):
            for j in row:
                if i < j:
                    rep.add("crossing", p, es[i], es[j])
        for kind, detail in _shape_violations(es, mode):
            rep.add(kind, p, detail)
    return rep


def check_drawing_layers(d: Drawing, g: Graph, mode: str = "noncrossing") -> Report:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    _coverage(d.colour_of, g)
    if not set(range(g.vertex_count)) <= set(d.pos):
        raise ValueError("some vertices have no position")
    rep = Report()
    ids = sorted(d.pos)
    xs = [d.pos[v].x for v in ids]
    ys = [d.pos[v].y for v in ids]
    for a, b, c in kernels.collinear_triples(xs, ys, False):
        rep.add("collinear", (ids[a], ids[b], ids[c]))
    for col in range(1, d.colour_count + 1):
        es = d.colour_class(col)
        for i, j in kernels.crossing_pairs(segs(d.pos, es), False, 0):
            rep.add("crossing", col, es[i], es[j])
        for kind, detail in _shape_violations(es, mode):
            rep.add(kind, col, detail)
    return rep


def check_colourful(colouring: Mapping[Edge, Hashable], v: int) -> bool:
    seen = [c for e, c in colouring.items() if v in e]
    return len(seen) == len(set(seen))


def check_fan(d: Drawing, v: int) -> bool:
    k = d.colour_count
    deg = len(d.adj.get(v, ()))
    if deg != 2 * k:
        raise ValueError(f"vertex {v} has degree {deg}, expected {2 * k}")
    return fan_labelling(d, v) is not None


def simplicial_vertices(g: Graph, k: int) -> list[int]:
    return [v for v in range(g.vertex_count) if g.degree(v) == k and g.is_clique(g.adj[v])]


def check_good(d: Drawing, build: KTreeBuild) -> Report:
    if build.k % 2:
        raise ValueError("good drawings are defined for even tree parameters")
    k = build.k // 2
    g = build.graph
    rep = check_drawing_layers(d, g, "noncrossing")
    if d.colour_count > k:
        rep.add("colours", d.colour_count)
    simp = simplicial_vertices(g, build.k)
    fans = [v for v in simp if d.colour_count == k and fan_labelling(d, v) is not None]
    if g.vertex_count == build.k + 1:
        if not fans:
            rep.add("no_fan")
    else:
        for v in sorted(set(simp) - set(fans)):
            rep.add("not_fan", v)
    return rep


def check_partition(g: Graph, k: int, case: PartitionCase, vertices: Iterable[int] | None = None) -> Report:
    rep = Report()
    vs = range(g.vertex_count) if vertices is None else vertices
    for problem in check_partition_case(g, k, vs, case):
        rep.add("partition", problem)
    return rep


PART_KINDS = ("planar", "outerplanar", "forest", "star_forest")


def check_edge_partition(g: Graph, parts: Iterable[Iterable[Edge]], kind: str) -> Report:
    """Every edge in exactly one part and every part of the given kind."""
    if kind not in PART_KINDS:
        raise ValueError(f"unknown part kind {kind!r}")
    parts = [[edge(*e) for e in p] for p in parts]
    rep = Report()
    seen: dict[Edge, int] = {}
    for i, p in enumerate(parts):
        for e in p:
            if not g.has_edge(*e):
                rep.add("foreign_edge", i, e)
            elif e in seen:
                rep.add("repeated_edge", i, e)
            seen[e] = i
    for e in sorted(set(g.edges) - set(seen)):
        rep.add("uncovered_edge", e)
    for i, p in enumerate(parts):
        if kind == "planar" and not is_planar(p):
            rep.add("not_planar", i)
        elif kind == "outerplanar" and not is_outerplanar(p):
            rep.add("not_outerplanar", i)
        elif kind in ("forest", "star_forest"):
            for v in _shape_violations(p, kind):
                rep.add(v[0], i, *v[1:])
    return rep


def nash_williams(g: Graph) -> int:
    """max over vertex subsets H with |H| >= 2 of ceil(|E(H)| / (|H| - 1))."""
    n = g.vertex_count
    if n > 12:
        raise ValueError("exhaustive subset evaluation is limited to 12 vertices")
    masks = [(1 << a) | (1 << b) for a, b in g.edges]
    best = 0
    for sub in range(1, 1 << n):
        size = bin(sub).count("1")
        if size < 2:
            continue
        m = sum(1 for e in masks if e & sub == e)
        best = max(best, -(-m // (size - 1)))
    return best


def is_k4_minor_free(g: Graph | Iterable[Edge]) -> bool:
    """Series-parallel reduction: strip vertices of degree <= 1, suppress degree 2."""
    edges = g.edges if isinstance(g, Graph) else {edge(*e) for e in g}
    adj: dict[int, set[int]] = defaultdict(set)
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    stack = [v for v in adj if len(adj[v]) <= 2]
    while stack:
        v = stack.pop()
        if v not in adj or len(adj[v]) > 2:
            continue
        nb = list(adj.pop(v))
        for u in nb:
            adj[u].discard(v)
        if len(nb) == 2:
            a, b = nb
            adj[a].add(b)
            adj[b].add(a)
        stack.extend(u for u in nb if len(adj[u]) <= 2)
    return not adj


# ---------------------------------------------------------------- refuters

class PreconditionError(ValueError):
    pass


def _vectors(colouring, clique, S):
    out = {}
    for w in S:
        try:
            out[w] = tuple(colouring[edge(w, c)] for c in clique)
        except KeyError as exc:
            raise PreconditionError(f"spoke {exc} is uncoloured") from None
    return out


def _bucket(vectors: dict, size: int) -> list[int]:
    groups: dict[tuple, list[int]] = defaultdict(list)
    for w in sorted(vectors):
        groups[vectors[w]].append(w)
        if len(groups[vectors[w]]) == size:
            return groups[vectors[w]]
    raise PreconditionError("no colour vector is shared often enough")


def _bipartite_witness(kind, colouring, g, clique, bucket, per_side, need):
    """Find ``need`` clique vertices with one colour toward ``per_side`` bucket members."""
    ws = bucket[:per_side]
    by_colour: dict[Hashable, list[int]] = defaultdict(list)
    for c in clique:
        by_colour[colouring[edge(ws[0], c)]].append(c)
    for col, cs in sorted(by_colour.items(), key=lambda t: str(t[0])):
        if len(cs) >= need:
            verts = tuple(cs[:need]) + tuple(ws) if kind == "K23" else tuple(ws) + tuple(cs[:need])
            w = MonoWitness(kind, verts, col)
            if validate_witness(w, g, colouring):
                return w
    # fall back to every choice inside the bucket
    for ws in combinations(bucket, per_side):
        for cs in combinations(clique, need):
            cols = {colouring[edge(a, b)] for a in ws for b in cs}
            if len(cols) == 1:
                verts = tuple(cs) + tuple(ws) if kind == "K23" else tuple(ws) + tuple(cs)
                w = MonoWitness(kind, verts, cols.pop())
                if validate_witness(w, g, colouring):
                    return w
    raise RuntimeError("no monochromatic witness inside the shared bucket")


def _split_graph(k: int, s: int) -> Graph:
    edges = list(combinations(range(k), 2)) + [(c, k + j) for j in range(s) for c in range(k)]
    return Graph.from_edges(k + s, edges)


def _colours_used(colouring, g: Graph):
    return {colouring[e] for e in g.edges if e in colouring}


def refute_thickness(colouring: Mapping[Edge, Hashable], k: int, s: int, ell: int) -> MonoWitness:
    """A monochromatic K_{3,3} in an ell-colouring of the complete split graph K*_{k,s}."""
    if k < 3 or ell < 1:
        raise PreconditionError("need k >= 3 and at least one colour")
    if ell > ceil(k / 2) - 1:
        raise PreconditionError(f"ell = {ell} exceeds ceil(k/2) - 1")
    if ceil(k / ell) < 3:
        raise PreconditionError("ceil(k/ell) < 3: no colour is forced three times")
    if s < 2 * ell ** k + 1:
        raise PreconditionError(f"s = {s} is below 2 ell^k + 1 = {2 * ell ** k + 1}")
    g = _split_graph(k, s)
    colouring = {edge(*e): c for e, c in colouring.items()}
    if len(_colours_used(colouring, g)) > ell:
        raise PreconditionError(f"colouring uses more than {ell} colours")
    clique = list(range(k))
    bucket = _bucket(_vectors(colouring, clique, range(k, k + s)), 3)
    return _bipartite_witness("K33", colouring, g, clique, bucket, 3, 3)


def refute_outerthickness(colouring: Mapping[Edge, Hashable], k: int, s: int, ell: int) -> MonoWitness:
    """A monochromatic K_{2,3} in an ell-colouring of K*_{k,s}."""
    if k < 2 or ell < 1:
        raise PreconditionError("need k >= 2 and at least one colour")
    if ell > k - 1:
        raise PreconditionError(f"ell = {ell} exceeds k - 1")
    if s < 2 * ell ** k + 1:
        raise PreconditionError(f"s = {s} is below 2 ell^k + 1 = {2 * ell ** k + 1}")
    g = _split_graph(k, s)
    colouring = {edge(*e): c for e, c in colouring.items()}
    if len(_colours_used(colouring, g)) > ell:
        raise PreconditionError(f"colouring uses more than {ell} colours")
    clique = list(range(k))
    bucket = _bucket(_vectors(colouring, clique, range(k, k + s)), 3)
    return _bipartite_witness("K23", colouring, g, clique, bucket, 3, 2)


def refute_star_arboricity(colouring: Mapping[Edge, Hashable], gadget: StarGadget) -> MonoWitness:
    """A monochromatic P_4 or C_4 in a k-colouring of the pendant gadget."""
    k = gadget.k
    if len(gadget.S) != k ** k + 1:
        raise PreconditionError("gadget must have k^k + 1 independent vertices")
    g = gadget.graph
    colouring = {edge(*e): c for e, c in colouring.items()}
    if any(e not in colouring for e in g.edges):
        raise PreconditionError("every edge must be coloured")
    if len(_colours_used(colouring, g)) > k:
        raise PreconditionError(f"colouring uses more than {k} colours")
    clique = list(gadget.clique)
    pend = gadget.pendants
    x, y = _bucket(_vectors(colouring, clique, gadget.S), 2)
    w = _star_trace(colouring, clique, x, y, pend[x])
    if w is not None and validate_witness(w, g, colouring):
        return w
    w = _small_mono_search(colouring, g, [x, y, pend[x], pend[y]] + clique)
    if w is None:
        raise RuntimeError("no monochromatic path or cycle found")
    return w


def _star_trace(colouring, clique, x, y, xp):
    at_x: dict[Hashable, list[int]] = defaultdict(list)
    for c in clique:
        at_x[colouring[edge(x, c)]].append(c)
    for col, cs in at_x.items():
        if len(cs) >= 2:
            return MonoWitness("C4", (x, cs[0], y, cs[1]), col)
    col = colouring[edge(x, xp)]
    if col in at_x:
        return MonoWitness("P4", (xp, x, at_x[col][0], y), col)
    return None


def _small_mono_search(colouring, g: Graph, vertices: list[int]):
    vs = set(vertices)
    for a, b in sorted(g.edges):
        if a not in vs or b not in vs:
            continue
        col = colouring[(a, b)]
        for p, q in ((a, b), (b, a)):
            for r in sorted(g.adj[q] & vs):
                if r == p or colouring[edge(q, r)] != col:
                    continue
                for t in sorted(g.adj[r] & vs):
                    if t in (p, q) or colouring[edge(r, t)] != col:
                        continue
                    if g.has_edge(t, p) and colouring[edge(t, p)] == col:
                        return MonoWitness("C4", (p, q, r, t), col)
                    return MonoWitness("P4", (p, q, r, t), col)
    return None
