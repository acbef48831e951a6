"""Graphs, k-tree certificates, the simplicial partition, and gadget generators."""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Union

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def edge_key(e: Edge) -> str:
    u, v = edge(*e)
    return f"{u}-{v}"


def parse_edge_key(key: str) -> Edge:
    u, v = key.split("-")
    return edge(int(u), int(v))


class NotAKTree(ValueError):
    """Raised when a graph fails k-tree certification.

    ``stage`` names the first check that failed: ``vertex_count``,
    ``edge_count``, ``elimination`` or ``base``.
    """

    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[Edge]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge {(u, v)} not normalised")
            if v >= self.vertex_count or u < 0:
                raise ValueError(f"edge {(u, v)} out of range")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(edge(u, v) for u, v in edges))

    @cached_property
    def adj(self) -> list[frozenset[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return [frozenset(s) for s in nbrs]

    @property
    def n(self) -> int:
        return self.vertex_count

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(edge(a, b) in self.edges for a, b in combinations(vs, 2))

    def to_json(self) -> dict:
        return {"n": self.vertex_count, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        return cls.from_edges(int(data["n"]), (tuple(e) for e in data["edges"]))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


@dataclass(frozen=True)
class KTreeBuild:
    """A k-tree as base clique plus ordered (vertex, k-clique) additions."""

    k: int
    base: tuple[int, ...]
    additions: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if len(self.base) != self.k + 1:
            raise ValueError(f"base must have k+1={self.k + 1} vertices")

    @property
    def n(self) -> int:
        return len(self.base) + len(self.additions)

    @cached_property
    def graph(self) -> Graph:
        return self.realize()

    def realize(self) -> Graph:
        """Build the graph, checking every addition lands on an existing k-clique."""
        n = self.n
        seen = set(self.base)
        if len(seen) != len(self.base):
            raise ValueError("repeated base vertex")
        edges = {edge(a, b) for a, b in combinations(self.base, 2)}
        for w, clique in self.additions:
            if w in seen:
                raise ValueError(f"vertex {w} added twice")
            if len(clique) != self.k or len(set(clique)) != self.k:
                raise ValueError(f"addition of {w} needs {self.k} distinct clique vertices")
            for c in clique:
                if c not in seen:
                    raise ValueError(f"clique vertex {c} not yet present when adding {w}")
            for a, b in combinations(clique, 2):
                if edge(a, b) not in edges:
                    raise ValueError(f"{clique} is not a clique when adding {w}")
            seen.add(w)
            edges.update(edge(w, c) for c in clique)
        if seen != set(range(n)):
            raise ValueError("vertices must be exactly 0..n-1")
        return Graph(n, frozenset(edges))

    def to_json(self) -> dict:
        data = self.graph.to_json()
        data.update(
            k=self.k,
            base=list(self.base),
            additions=[{"v": w, "clique": list(c)} for w, c in self.additions],
        )
        return data

    @classmethod
    def from_json(cls, data: dict) -> "KTreeBuild":
        return cls(
            int(data["k"]),
            tuple(data["base"]),
            tuple((int(a["v"]), tuple(a["clique"])) for a in data["additions"]),
        )


def ktree_edge_count(k: int, n: int) -> int:
    return k * n - k * (k + 1) // 2


def ktree_certify(g: Graph, k: int) -> KTreeBuild:
    """Certify ``g`` as a k-tree by simplicial elimination.

    Ties between simplicial vertices go to the lowest index, so the returned
    build is deterministic.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = g.vertex_count
    if n < k + 1:
        raise NotAKTree("vertex_count", f"need at least {k + 1} vertices, got {n}")
    if len(g.edges) != ktree_edge_count(k, n):
        raise NotAKTree(
            "edge_count", f"expected {ktree_edge_count(k, n)} edges, got {len(g.edges)}"
        )
    nbrs = [set(s) for s in g.adj]
    alive = set(range(n))
    heap = [v for v in range(n) if len(nbrs[v]) == k]
    heapq.heapify(heap)
    removed: list[tuple[int, tuple[int, ...]]] = []
    while len(alive) > k + 1:
        v = None
        while heap:
            cand = heapq.heappop(heap)
            if cand in alive and len(nbrs[cand]) == k and g.is_clique(nbrs[cand]):
                v = cand
                break
        if v is None:
            raise NotAKTree(
                "elimination", f"no {k}-simplicial vertex among {len(alive)} remaining"
            )
        clique = tuple(sorted(nbrs[v]))
        removed.append((v, clique))
        alive.discard(v)
        for u in clique:
            nbrs[u].discard(v)
            if len(nbrs[u]) == k:
                heapq.heappush(heap, u)
    base = tuple(sorted(alive))
    if not g.is_clique(base):
        raise NotAKTree("base", f"remaining vertices {base} are not a clique")
    return KTreeBuild(k, base, tuple(reversed(removed)))


def random_ktree(k: int, n: int, seed: int | None = 0) -> KTreeBuild:
    if k < 1:
        raise ValueError("k must be positive")
    if n < k + 1:
        raise ValueError(f"a {k}-tree needs at least {k + 1} vertices")
    rng = random.Random(seed)
    base = tuple(range(k + 1))
    cliques = [tuple(c) for c in combinations(base, k)]
    additions = []
    for w in range(k + 1, n):
        clique = rng.choice(cliques)
        additions.append((w, clique))
        cliques.extend(tuple(sorted(set(clique) - {c} | {w})) for c in clique)
    return KTreeBuild(k, base, tuple(additions))


@dataclass(frozen=True)
class CaseA:
    """G minus S is a k-clique."""

    S: frozenset[int]


@dataclass(frozen=True)
class CaseB:
    """G minus S is a k-tree in which ``pivot_v`` is k-simplicial."""

    S: frozenset[int]
    pivot_v: int


PartitionCase = Union[CaseA, CaseB]


def _simplicial(nbrs: dict[int, set[int]], has_edge, k: int) -> list[int]:
    out = []
    for v, nv in nbrs.items():
        if len(nv) == k and all(has_edge(a, b) for a, b in combinations(nv, 2)):
            out.append(v)
    return sorted(out)


def partition_vertices(
    g: Graph, k: int, vertices: Iterable[int], nominate: int | None = None
) -> PartitionCase:
    """Apply the simplicial partition to the k-tree induced on ``vertices``.

    When the induced graph is K_{k+1}, S is the single vertex ``nominate``
    (lowest index when not given).
    """
    vs = set(vertices)
    if len(vs) == k + 1:
        s = nominate if nominate is not None and nominate in vs else min(vs)
        return CaseA(frozenset([s]))
    nbrs = {v: g.adj[v] & vs for v in vs}
    has = g.has_edge
    leaves = set(_simplicial(nbrs, has, k))
    rest = vs - leaves
    if len(rest) == k:
        return CaseA(frozenset(leaves))
    sub = {v: nbrs[v] & rest for v in rest}
    pivot = _simplicial(sub, has, k)[0]
    return CaseB(frozenset(nbrs[pivot] & leaves), pivot)


def lemma_partition(build: KTreeBuild) -> PartitionCase:
    g = build.graph
    return partition_vertices(g, build.k, range(g.vertex_count))


def partition_chain(
    g: Graph, k: int, nominate: int | None = None
) -> list[tuple[frozenset[int], PartitionCase]]:
    """Repeatedly partition, peeling S each time, until case (a) is reached.

    Returns (vertex set, case) pairs from the full graph down to the base.
    The pivot of each case (b) is nominated for the next level so that
    constructions can make it colourful or a fan when that level is K_{k+1}.
    """
    chain = []
    cur = frozenset(range(g.vertex_count))
    while True:
        case = partition_vertices(g, k, cur, nominate)
        chain.append((cur, case))
        if isinstance(case, CaseA):
            return chain
        cur = cur - case.S
        nominate = case.pivot_v


def check_partition_case(g: Graph, k: int, vertices: Iterable[int], case: PartitionCase) -> list[str]:
    """Return the list of violated partition invariants (empty when valid)."""
    vs = set(vertices)
    problems = []
    S = set(case.S)
    if not S or not S <= vs:
        return ["S empty or outside the graph"]
    for w in S:
        nw = g.adj[w] & vs
        if len(nw) != k or not g.is_clique(nw):
            problems.append(f"{w} is not {k}-simplicial")
        if nw & S:
            problems.append(f"S not independent at {w}")
    rest = vs - S
    if isinstance(case, CaseA):
        if len(rest) != k or not g.is_clique(rest):
            problems.append("G minus S is not K_k")
        return problems
    v = case.pivot_v
    if v not in rest:
        return problems + ["pivot outside G minus S"]
    nv = g.adj[v] & rest
    if len(nv) != k or not g.is_clique(nv):
        problems.append("pivot not k-simplicial in G minus S")
    closed = nv | {v}
    for w in S:
        nw = g.adj[w] & vs
        missing = [u for u in nv if nw == closed - {u}]
        if len(missing) != 1:
            problems.append(f"{w} does not miss exactly one neighbour of the pivot")
    return problems


def complete_split(k: int, s: int) -> KTreeBuild:
    """K*_{k,s}: clique 0..k-1 plus s vertices k..k+s-1 added onto it."""
    if k < 1 or s < 1:
        raise ValueError("k and s must be positive")
    clique = tuple(range(k))
    return KTreeBuild(k, clique + (k,), tuple((k + j, clique) for j in range(1, s)))


def qk_graph(k: int) -> KTreeBuild:
    if k < 3:
        raise ValueError("Q_k needs k >= 3")
    s = 2 * k * k + 1
    split = complete_split(k, s)
    clique = tuple(range(k))
    additions = list(split.additions)
    nxt = k + s
    for v in range(k, k + s):
        for x in clique[:3]:
            onto = tuple(sorted(set(clique) - {x} | {v}))
            for _ in range(4):
                additions.append((nxt, onto))
                nxt += 1
    return KTreeBuild(k, split.base, tuple(additions))


@dataclass(frozen=True)
class StarGadget:
    graph: Graph
    k: int
    clique: tuple[int, ...]
    S: tuple[int, ...]
    pendants: dict[int, int] = field(hash=False)

    def to_json(self) -> dict:
        data = self.graph.to_json()
        data.update(
            k=self.k,
            clique=list(self.clique),
            S=list(self.S),
            pendants={str(v): p for v, p in self.pendants.items()},
        )
        return data

    @classmethod
    def from_json(cls, data: dict) -> "StarGadget":
        return cls(
            Graph.from_json(data),
            int(data["k"]),
            tuple(data["clique"]),
            tuple(data["S"]),
            {int(v): int(p) for v, p in data["pendants"].items()},
        )


def star_lb_graph(k: int) -> StarGadget:
    """K*_{k,s} with s = k^k + 1 and one pendant vertex on every S-vertex."""
    if k < 1:
        raise ValueError("k must be positive")
    s = k**k + 1
    split = complete_split(k, s).graph
    S = tuple(range(k, k + s))
    pendants = {v: k + s + j for j, v in enumerate(S)}
    edges = set(split.edges) | {edge(v, p) for v, p in pendants.items()}
    return StarGadget(Graph(k + 2 * s, frozenset(edges)), k, tuple(range(k)), S, pendants)


def ktree_lift(build: KTreeBuild) -> KTreeBuild:
    """Embed a k-tree in a (k+1)-tree on one extra vertex.

    The auxiliary vertex ``n`` joins the base clique; each addition (w onto C)
    becomes (w onto C + p) with p the lowest vertex adjacent to all of C.
    """
    aux = build.n
    adj: dict[int, set[int]] = {v: set() for v in (*build.base, aux)}
    base = tuple(build.base) + (aux,)
    for a, b in combinations(base, 2):
        adj[a].add(b)
        adj[b].add(a)
    additions = []
    for w, clique in build.additions:
        common = set.intersection(*(adj[c] for c in clique)) - set(clique)
        p = min(common)
        onto = tuple(sorted(clique + (p,)))
        additions.append((w, onto))
        adj[w] = set(onto)
        for c in onto:
            adj[c].add(w)
    return KTreeBuild(build.k + 1, base, tuple(additions))
