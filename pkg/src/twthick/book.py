"""Book embeddings: a cyclic vertex order plus a page for every edge."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import CaseA, Edge, Graph, KTreeBuild, edge, edge_key, parse_edge_key, partition_chain


@dataclass(frozen=True)
class BookEmbedding:
    order: tuple[int, ...]
    page_of: dict[Edge, int]
    page_count: int

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise ValueError("order repeats a vertex")
        placed = set(self.order)
        for (u, v), p in self.page_of.items():
            if u not in placed or v not in placed:
                raise ValueError(f"edge {u}-{v} has an endpoint missing from the order")
            if not 1 <= p <= self.page_count:
                raise ValueError(f"edge {u}-{v} is on page {p} outside 1..{self.page_count}")

    def __hash__(self):
        return hash((self.order, self.page_count))

    def pages(self) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = {p: [] for p in range(1, self.page_count + 1)}
        for e, p in sorted(self.page_of.items()):
            out[p].append(e)
        return out

    def to_json(self) -> dict:
        return {
            "order": list(self.order),
            "pages": {edge_key(e): p for e, p in sorted(self.page_of.items())},
            "page_count": self.page_count,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BookEmbedding":
        return cls(
            tuple(int(v) for v in data["order"]),
            {parse_edge_key(k): int(p) for k, p in data["pages"].items()},
            int(data["page_count"]),
        )


def book_crosses(order: Sequence[int], e: Edge, f: Edge) -> bool:
    """Whether chords e and f interleave on the circle given by ``order``."""
    if set(e) & set(f):
        return False
    where = {v: i for i, v in enumerate(order)}
    a, b = sorted((where[e[0]], where[e[1]]))
    inside = [a < where[x] < b for x in f]
    return inside[0] != inside[1]


def zigzag_page(alpha: int, beta: int, k: int) -> int:
    """Page of edge u_alpha u_beta in the standard k-page layout of K_2k (labels 1..2k)."""
    return 1 + ((alpha + beta) % (2 * k)) // 2


def zigzag_complete(k: int) -> BookEmbedding:
    """K_2k on vertices 0..2k-1 in order, k pages; vertex a stands for u_(a+1)."""
    if k < 1:
        raise ValueError("k must be positive")
    n = 2 * k
    pages = {(a, b): zigzag_page(a + 1, b + 1, k) for a in range(n) for b in range(a + 1, n)}
    return BookEmbedding(tuple(range(n)), pages, k)


def _clique_stars(g: Graph, vs: frozenset[int], U: list[int]) -> dict[Edge, int]:
    """Colour every edge inside ``vs`` by the position of its lowest endpoint in U."""
    rank = {u: i + 1 for i, u in enumerate(U)}
    pages = {}
    for a, b in g.edges:
        if a in vs and b in vs:
            pages[(a, b)] = min(rank.get(a, len(U) + 1), rank.get(b, len(U) + 1))
    return pages


def embed_star_forests(build: KTreeBuild) -> BookEmbedding:
    """Book embedding on k+1 pages, each a star forest, with simplicial vertices colourful."""
    k = build.k
    g = build.graph
    chain = partition_chain(g, k)
    vs, case = chain[-1]
    U = sorted(vs - case.S)
    order = U + sorted(case.S)
    pages = _clique_stars(g, vs, U)
    for vs, case in reversed(chain[:-1]):
        v = case.pivot_v
        nbrs = [u for u in g.adj[v] if u in vs and u not in case.S]
        cols = {u: pages[edge(v, u)] for u in nbrs}
        if len(set(cols.values())) != len(nbrs):
            raise RuntimeError(f"pivot {v} is not colourful")
        (free,) = set(range(1, k + 2)) - set(cols.values())
        at = order.index(v) + 1
        S = sorted(case.S)
        order[at:at] = S
        for w in S:
            pages[edge(w, v)] = free
            for u in nbrs:
                if u in g.adj[w]:
                    pages[edge(w, u)] = cols[u]
    return BookEmbedding(tuple(order), pages, max(pages.values(), default=1))


def embed_2tree_forests(build: KTreeBuild) -> BookEmbedding:
    """Two-page book embedding of a 2-tree in which each page is a forest."""
    if build.k != 2:
        raise ValueError("two-page forest embeddings are built for 2-trees only")
    g = build.graph
    chain = partition_chain(g, 2)
    vs, case = chain[-1]
    u1, u2 = sorted(vs - case.S)
    order = [u1, u2] + sorted(case.S)
    pages = {}
    for a, b in g.edges:
        if a in vs and b in vs:
            pages[(a, b)] = 1 if u1 in (a, b) else 2
    for vs, case in reversed(chain[:-1]):
        v = case.pivot_v
        nbrs = [u for u in g.adj[v] if u in vs and u not in case.S]
        at = order.index(v)
        n = len(order)
        # the neighbour met first when walking on from v in list order
        first, second = sorted(nbrs, key=lambda u: (order.index(u) - at) % n)
        c1, c2 = pages[edge(v, first)], pages[edge(v, second)]
        if c1 == c2:
            raise RuntimeError(f"pivot {v} is not colourful")
        after = sorted(w for w in case.S if first in g.adj[w])
        before = sorted(w for w in case.S if second in g.adj[w])
        order[at + 1:at + 1] = after
        order[at:at] = before
        for group, u, c in ((after, first, c1), (before, second, c2)):
            for w in group:
                pages[edge(w, u)] = c
                pages[edge(w, v)] = 3 - c
    return BookEmbedding(tuple(order), pages, 2)
