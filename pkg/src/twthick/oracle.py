"""Exact parameters of small graphs by exhaustive search.

Each result carries a witness that the verify module can recheck and a record of
the search showing that one fewer part is impossible. Vertex, edge and part
orders are fixed ascending, so results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import ceil
from typing import Callable

from . import kernels
from .book import BookEmbedding
from .graph import Edge, Graph, edge
from .planarity import is_outerplanar, is_planar
from .verify import Report, check_book, check_edge_partition


@dataclass
class OracleResult:
    value: int
    witness: object
    proof: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        w = self.witness
        if hasattr(w, "to_json"):
            w = w.to_json()
        elif isinstance(w, list):
            w = [[list(e) for e in sorted(p)] for p in w]
        return {"value": self.value, "witness": w, "proof": self.proof}


def _live_vertices(g: Graph) -> list[int]:
    return sorted({x for e in g.edges for x in e})


# ---------------------------------------------------------------- edge partitions


def _planar_ok(part: list[Edge]) -> bool:
    return is_planar(part)


def _outer_ok(part: list[Edge]) -> bool:
    return is_outerplanar(part)


def _partition(edges: list[Edge], t: int, ok: Callable[[list[Edge]], bool], cap: int, stats: dict):
    """Split ``edges`` into at most t parts each accepted by ``ok``; None if impossible.

    Parts are interchangeable, so an edge may open only the first empty part.
    ``cap`` bounds the size of any acceptable part and prunes hopeless branches.
    """
    m = len(edges)
    parts: list[list[Edge]] = [[] for _ in range(t)]

    def rec(i: int, used: int) -> bool:
        stats["nodes"] = stats.get("nodes", 0) + 1
        if i == m:
            return True
        room = sum(cap - len(p) for p in parts[:used]) + (t - used) * cap
        if m - i > room:
            return False
        e = edges[i]
        for j in range(min(t, used + 1)):
            p = parts[j]
            if len(p) >= cap:
                continue
            p.append(e)
            if ok(p) and rec(i + 1, max(used, j + 1)):
                return True
            p.pop()
        return False

    if rec(0, 0):
        return [list(p) for p in parts if p]
    return None


def _upward(g: Graph, lower: int, ok, cap: int, kind: str, method: str) -> OracleResult:
    edges = sorted(g.edges)
    levels = []
    t = max(lower, 1)
    if t > 1:
        levels.append({"parts": t - 1, "feasible": False, "reason": "counting bound"})
    while True:
        stats: dict = {}
        parts = _partition(edges, t, ok, cap, stats)
        levels.append({"parts": t, "feasible": parts is not None, "nodes": stats["nodes"]})
        if parts is not None:
            rep = check_edge_partition(g, parts, kind)
            if not rep.passed:
                raise AssertionError(f"oracle witness rejected: {rep.violations[:3]}")
            return OracleResult(t, parts, {"method": method, "levels": levels})
        t += 1


def _forest_path(adj: dict[int, dict[int, Edge]], a: int, b: int):
    """Edges on the path from a to b in a forest given as vertex -> {neighbour: edge}; None if apart."""
    back = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            out = []
            while back[x] is not None:
                y, e = back[x]
                out.append(e)
                x = y
            return out
        for y, e in adj.get(x, {}).items():
            if y not in back:
                back[y] = (x, e)
                stack.append(y)
    return None


def forest_partition(edges: list[Edge], k: int):
    """Split edges into k forests by shortest augmenting paths (matroid partition).

    Returns (forests, None) on success and (None, dense) on failure, where ``dense`` is
    a vertex set spanning more than k(|dense| - 1) edges.
    """
    adj: list[dict[int, dict[int, Edge]]] = [{} for _ in range(k)]
    home: dict[Edge, int] = {}

    def put(e, i):
        a, b = e
        adj[i].setdefault(a, {})[b] = e
        adj[i].setdefault(b, {})[a] = e
        home[e] = i

    def take(e):
        i = home.pop(e)
        a, b = e
        del adj[i][a][b]
        del adj[i][b][a]

    for e0 in edges:
        parent = {e0: None}
        queue = [e0]
        done = False
        while queue and not done:
            e = queue.pop(0)
            for i in range(k):
                if home.get(e) == i:
                    continue
                path = _forest_path(adj[i], *e)
                if path is None:
                    cur, target = e, i
                    while cur is not None:
                        if cur in home:
                            old = home[cur]
                            take(cur)
                        else:
                            old = None
                        put(cur, target)
                        step = parent[cur]
                        if step is None:
                            break
                        cur, target = step[0], old if old is not None else step[1]
                    done = True
                    break
                for f in path:
                    if f not in parent:
                        parent[f] = (e, i)
                        queue.append(f)
        if not done:
            # the labelled edges are spanned by every forest; some component is too dense
            labelled = list(parent)
            comp: dict[int, int] = {}

            def find(x):
                comp.setdefault(x, x)
                while comp[x] != x:
                    comp[x] = comp[comp[x]]
                    x = comp[x]
                return x

            for a, b in labelled:
                comp[find(a)] = find(b)
            groups: dict[int, set[int]] = {}
            for a, b in labelled:
                groups.setdefault(find(a), set()).update((a, b))
            for vs in groups.values():
                inside = sum(1 for a, b in edges if a in vs and b in vs)
                if inside > k * (len(vs) - 1):
                    return None, sorted(vs)
            raise AssertionError("augmenting search failed without a dense subgraph")
    forests = [[] for _ in range(k)]
    for e, i in home.items():
        forests[i].append(e)
    return [sorted(f) for f in forests if f], None


def exact_arboricity(g: Graph) -> OracleResult:
    """Least k with a k-forest partition; each smaller k comes with a too-dense vertex set."""
    if g.vertex_count > 10:
        raise ValueError("exact_arboricity is limited to 10 vertices")
    if not g.edges:
        return OracleResult(0, [], {"method": "empty graph"})
    edges = sorted(g.edges)
    levels = []
    k = 1
    while True:
        parts, dense = forest_partition(edges, k)
        if parts is not None:
            rep = check_edge_partition(g, parts, "forest")
            if not rep.passed:
                raise AssertionError(f"oracle witness rejected: {rep.violations[:3]}")
            levels.append({"parts": k, "feasible": True})
            return OracleResult(k, parts, {"method": "matroid partition by augmenting paths", "levels": levels})
        inside = sum(1 for a, b in edges if a in dense and b in dense)
        levels.append({"parts": k, "feasible": False, "dense_vertices": dense, "dense_edges": inside})
        k += 1


def _star_partition(edges: list[Edge], t: int, stats: dict):
    """Backtracking split into at most t star forests with O(1) incremental checks.

    Adding uv keeps a star forest iff u and v are not both already covered, and a
    covered endpoint of degree 1 hangs off a vertex that is itself a leaf.
    """
    m = len(edges)
    nbrs: list[dict[int, list[int]]] = [{} for _ in range(t)]

    def fits(j, u, v) -> bool:
        nb = nbrs[j]
        du, dv = len(nb.get(u, ())), len(nb.get(v, ()))
        if du and dv:
            return False
        for x, dx in ((u, du), (v, dv)):
            if dx == 1 and len(nb[nb[x][0]]) != 1:
                return False
        return True

    def rec(i: int, used: int) -> bool:
        stats["nodes"] = stats.get("nodes", 0) + 1
        if i == m:
            return True
        u, v = edges[i]
        for j in range(min(t, used + 1)):
            if not fits(j, u, v):
                continue
            nb = nbrs[j]
            nb.setdefault(u, []).append(v)
            nb.setdefault(v, []).append(u)
            if rec(i + 1, max(used, j + 1)):
                return True
            nb[u].pop()
            nb[v].pop()
            if not nb[u]:
                del nb[u]
            if not nb[v]:
                del nb[v]
        return False

    if rec(0, 0):
        parts = [[] for _ in range(t)]
        for j, nb in enumerate(nbrs):
            parts[j] = sorted({edge(x, y) for x, ys in nb.items() for y in ys})
        return [p for p in parts if p]
    return None


def exact_star_arboricity(g: Graph) -> OracleResult:
    if len(g.edges) > 21:
        raise ValueError("exact_star_arboricity is limited to 21 edges")
    if not g.edges:
        return OracleResult(0, [], {"method": "empty graph"})
    edges = sorted(g.edges)
    n = len(_live_vertices(g))
    t = max(1, ceil(len(edges) / (n - 1)))
    levels = []
    if t > 1:
        levels.append({"parts": t - 1, "feasible": False, "reason": "counting bound"})
    while True:
        stats: dict = {}
        parts = _star_partition(edges, t, stats)
        levels.append({"parts": t, "feasible": parts is not None, "nodes": stats["nodes"]})
        if parts is not None:
            rep = check_edge_partition(g, parts, "star_forest")
            if not rep.passed:
                raise AssertionError(f"oracle witness rejected: {rep.violations[:3]}")
            return OracleResult(t, parts, {"method": "exhaustive star-forest partition", "levels": levels})
        t += 1


def exact_outerthickness(g: Graph) -> OracleResult:
    if g.vertex_count > 7:
        raise ValueError("exact_outerthickness is limited to 7 vertices")
    if not g.edges:
        return OracleResult(0, [], {"method": "empty graph"})
    n = len(_live_vertices(g))
    cap = max(2 * n - 3, 1)
    lower = ceil(len(g.edges) / cap)
    return _upward(g, lower, _outer_ok, cap, "outerplanar", "exhaustive outerplanar partition")


# ---------------------------------------------------------------- thickness

def _stacked_triangulation(n: int) -> frozenset:
    faces = {frozenset(f) for f in combinations(range(4), 3)}
    for v in range(4, n):
        f = frozenset((0, 1, v - 1))
        faces.remove(f)
        a, b, c = sorted(f)
        faces |= {frozenset((a, b, v)), frozenset((a, c, v)), frozenset((b, c, v))}
    return frozenset(faces)


def _face_edges(faces) -> set[Edge]:
    return {edge(a, b) for f in faces for a, b in combinations(sorted(f), 2)}


def _adj_of(edges, n) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _invariant(adj) -> tuple:
    return tuple(sorted((len(a), tuple(sorted(len(adj[y]) for y in a))) for a in adj))


def _isomorphic(a: list[set[int]], b: list[set[int]]) -> bool:
    n = len(a)
    order = sorted(range(n), key=lambda v: -len(a[v]))
    image = [-1] * n
    taken = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if taken[w] or len(b[w]) != len(a[v]):
                continue
            if all((image[u] in b[w]) == (u in a[v]) for u in order[:i]):
                image[v] = w
                taken[w] = True
                if rec(i + 1):
                    return True
                taken[w] = False
        image[v] = -1
        return False

    return rec(0)


def triangulations(n: int) -> list[frozenset]:
    """One face set per isomorphism class of triangulations of the sphere on n >= 4 vertices.

    Walks the flip graph, which is connected on unlabelled triangulations.
    """
    if n < 4:
        raise ValueError("triangulations need at least 4 vertices")
    start = _stacked_triangulation(n)
    seen: dict[tuple, list] = {}
    out: list[frozenset] = []

    def admit(faces) -> bool:
        adj = _adj_of(_face_edges(faces), n)
        key = _invariant(adj)
        bucket = seen.setdefault(key, [])
        if any(_isomorphic(adj, other) for other in bucket):
            return False
        bucket.append(adj)
        out.append(faces)
        return True

    admit(start)
    i = 0
    while i < len(out):
        faces = out[i]
        i += 1
        edges = _face_edges(faces)
        for a, b in sorted(edges):
            pair = [f for f in faces if a in f and b in f]
            c = next(iter(pair[0] - {a, b}))
            d = next(iter(pair[1] - {a, b}))
            if edge(c, d) in edges:
                continue
            flipped = (faces - set(pair)) | {frozenset((a, c, d)), frozenset((b, c, d))}
            admit(frozenset(flipped))
    return out


def _complete_thickness(g: Graph, verts: list[int]) -> OracleResult:
    n = len(verts)
    label = dict(enumerate(verts))
    tris = triangulations(n)
    every = {edge(a, b) for a, b in combinations(range(n), 2)}
    relabel = lambda es: sorted(edge(label[a], label[b]) for a, b in es)
    planar_complements = 0
    witness = None
    for faces in tris:
        t_edges = _face_edges(faces)
        rest = sorted(every - t_edges)
        if is_planar(rest):
            planar_complements += 1
            if witness is None:
                witness = [relabel(t_edges), relabel(rest)]
    proof = {
        "method": "triangulation enumeration",
        "argument": "K_n splits into two planar graphs iff some triangulation on n vertices has a planar complement",
        "triangulations": len(tris),
        "planar_complements": planar_complements,
    }
    if witness is None:
        stats: dict = {}
        for faces in tris:
            t_edges = _face_edges(faces)
            rest = sorted(every - t_edges)
            split = _partition(rest, 2, _planar_ok, 3 * n - 6, stats)
            if split is not None:
                witness = [relabel(t_edges)] + [relabel(p) for p in split]
                break
        proof["three_part_nodes"] = stats.get("nodes", 0)
        if witness is None:
            raise AssertionError("no three-part planar split found")
    rep = check_edge_partition(g, witness, "planar")
    if not rep.passed:
        raise AssertionError(f"oracle witness rejected: {rep.violations[:3]}")
    return OracleResult(len(witness), witness, proof)


def exact_thickness(g: Graph) -> OracleResult:
    if g.vertex_count > 10:
        raise ValueError("exact_thickness is limited to 10 vertices")
    if not g.edges:
        return OracleResult(0, [], {"method": "empty graph"})
    verts = _live_vertices(g)
    edges = sorted(g.edges)
    if is_planar(edges):
        return OracleResult(1, [edges], {"method": "planarity test", "levels": [{"parts": 1, "feasible": True}]})
    if len(verts) >= 5 and g.is_clique(verts):
        return _complete_thickness(g, verts)
    n = len(verts)
    res = _upward(g, 2, _planar_ok, 3 * n - 6, "planar", "exhaustive planar partition")
    res.proof["levels"][0]["reason"] = "not planar"
    return res


# ---------------------------------------------------------------- book thickness

def exact_book_thickness(g: Graph) -> OracleResult:
    """Minimum pages over all vertex orders, first vertex fixed and reflections skipped."""
    if g.vertex_count > 9:
        raise ValueError("exact_book_thickness is limited to 9 vertices")
    verts = _live_vertices(g)
    isolated = [v for v in range(g.vertex_count) if v not in set(verts)]
    edges = sorted(g.edges)
    if not edges:
        emb = BookEmbedding(tuple(range(g.vertex_count)), {}, 0)
        return OracleResult(0, emb, {"method": "empty graph"})
    lower, reason = 1, "has an edge"
    if not is_outerplanar(edges):
        lower, reason = 2, "not outerplanar"
    if not is_planar(edges):
        lower, reason = 3, "not planar"
    eu = [a for a, _ in edges]
    ev = [b for _, b in edges]
    first, rest = verts[0], verts[1:]
    best, best_order, best_colours = len(edges) + 1, None, None
    stats = {"orders": 0, "clique_pruned": 0, "colourings": 0}
    stopped = False
    for perm in permutations(rest):
        if len(perm) >= 2 and perm[0] > perm[-1]:
            continue  # the reflected order is visited instead
        stats["orders"] += 1
        order = (first,) + perm
        pos = [0] * g.vertex_count
        for i, v in enumerate(order):
            pos[v] = i
        nbrs = kernels.book_conflicts(pos, eu, ev)
        clique = kernels.greedy_clique(nbrs)
        if clique >= best:
            stats["clique_pruned"] += 1
            continue
        for c in range(max(clique, lower, 1), best):
            stats["colourings"] += 1
            col = kernels.colour_graph(nbrs, c)
            if col is not None:
                best, best_order, best_colours = c, order, col
                break
        if best == lower:
            stopped = True
            break
    emb = BookEmbedding(
        tuple(best_order) + tuple(isolated),
        {e: best_colours[i] + 1 for i, e in enumerate(edges)},
        best,
    )
    rep = check_book(emb, g)
    if not rep.passed:
        raise AssertionError(f"oracle witness rejected: {rep.violations[:3]}")
    proof = {
        "method": "vertex orders with first vertex fixed, reflections skipped; conflict-graph colouring",
        "lower_bound": {"value": lower, "reason": reason},
        "stopped_at_lower_bound": stopped,
        **stats,
    }
    return OracleResult(best, emb, proof)


# ---------------------------------------------------------------- relations

CHAIN = (
    ("thickness <= outerthickness", lambda p: p["thickness"] <= p["outerthickness"]),
    ("outerthickness <= arboricity", lambda p: p["outerthickness"] <= p["arboricity"]),
    ("arboricity <= star_arboricity", lambda p: p["arboricity"] <= p["star_arboricity"]),
    ("outerthickness <= 2 thickness", lambda p: p["outerthickness"] <= 2 * p["thickness"]),
    ("arboricity <= 3 thickness", lambda p: p["arboricity"] <= 3 * p["thickness"]),
    ("arboricity <= 2 outerthickness", lambda p: p["arboricity"] <= 2 * p["outerthickness"]),
    ("star_arboricity <= 3 outerthickness", lambda p: p["star_arboricity"] <= 3 * p["outerthickness"]),
    ("star_arboricity <= 5 thickness", lambda p: p["star_arboricity"] <= 5 * p["thickness"]),
    ("star_arboricity <= 2 arboricity", lambda p: p["star_arboricity"] <= 2 * p["arboricity"]),
)


def graph_parameters(g: Graph) -> dict[str, int]:
    return {
        "thickness": exact_thickness(g).value,
        "outerthickness": exact_outerthickness(g).value,
        "arboricity": exact_arboricity(g).value,
        "star_arboricity": exact_star_arboricity(g).value,
    }


def inequality_chain_check(g: Graph) -> Report:
    if g.vertex_count > 7:
        raise ValueError("inequality_chain_check is limited to 7 vertices")
    params = graph_parameters(g)
    rep = Report()
    for name, holds in CHAIN:
        if not holds(params):
            rep.add("inequality", name, tuple(sorted(params.items())))
    rep.parameters = params
    return rep
