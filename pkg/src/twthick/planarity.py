"""Exact planarity and outerplanarity for small graphs by exhaustive search.

Planarity looks for a K5 or K3,3 subdivision after dropping degree-0/1 vertices and
suppressing degree-2 vertices, neither of which changes planarity. Outerplanarity
looks for a circular vertex order in which no two edges interleave.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .graph import Edge, edge


def _adjacency(edges: Iterable[Edge]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        if u == v:
            continue
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def reduce_graph(edges: Iterable[Edge]) -> dict[int, set[int]]:
    """Drop vertices of degree at most 1 and suppress degree-2 vertices until none remain."""
    adj = _adjacency(edges)
    stack = list(adj)
    while stack:
        x = stack.pop()
        if x not in adj:
            continue
        nb = adj[x]
        if len(nb) <= 1:
            for y in nb:
                adj[y].discard(x)
                stack.append(y)
            del adj[x]
        elif len(nb) == 2:
            a, b = nb
            adj[a].discard(x)
            adj[b].discard(x)
            del adj[x]
            # a parallel edge would be redundant for planarity
            adj[a].add(b)
            adj[b].add(a)
            stack += [a, b]
    return adj


def _route(adj, pairs, used, idx, paths) -> bool:
    """Route pairs[idx:] as internally disjoint paths avoiding ``used``."""
    if idx == len(pairs):
        return True
    a, b = pairs[idx]
    # direct edge first, then longer paths by DFS
    if b in adj[a]:
        paths.append((a, b))
        if _route(adj, pairs, used, idx + 1, paths):
            return True
        paths.pop()
    path = [a]

    def dfs(x) -> bool:
        for y in sorted(adj[x]):
            if y == b and len(path) > 1:
                path.append(b)
                paths.append(tuple(path))
                if _route(adj, pairs, used, idx + 1, paths):
                    return True
                paths.pop()
                path.pop()
            elif y not in used:
                used.add(y)
                path.append(y)
                if dfs(y):
                    return True
                path.pop()
                used.discard(y)
        return False

    return dfs(a)


def _k5_pairs(branch):
    return list(combinations(branch, 2))


def _k33_pairs(left, right):
    return [(a, b) for a in left for b in right]


def _search(adj: dict[int, set[int]]):
    verts = sorted(adj)
    deg4 = [v for v in verts if len(adj[v]) >= 4]
    for branch in combinations(deg4, 5):
        used = set(branch)
        paths: list = []
        if _route(adj, _k5_pairs(branch), used, 0, paths):
            return ("K5", branch, paths)
    deg3 = [v for v in verts if len(adj[v]) >= 3]
    for six in combinations(deg3, 6):
        first, rest = six[0], six[1:]
        for pair in combinations(rest, 2):
            left = (first,) + pair
            right = tuple(v for v in rest if v not in pair)
            used = set(six)
            paths = []
            if _route(adj, _k33_pairs(left, right), used, 0, paths):
                return ("K3,3", (left, right), paths)
    return None


@lru_cache(maxsize=1 << 16)
def _kuratowski_cached(edges: frozenset):
    adj = reduce_graph(edges)
    n = len(adj)
    if n < 5:
        return None
    m = sum(len(s) for s in adj.values()) // 2
    # every part of the search needs at least 9 edges; Euler's bound short-circuits only
    # the answer, the witness search still runs so that a subdivision is returned
    if m < 9:
        return None
    return _search(adj)


def kuratowski_subgraph(edges: Iterable[Edge]):
    """A K5 or K3,3 subdivision in the reduced graph as (kind, branch vertices, paths), or None.

    Paths live in the reduced graph, where a suppressed degree-2 chain appears as one edge.
    """
    return _kuratowski_cached(frozenset(edge(u, v) for u, v in edges if u != v))


def is_planar(edges: Iterable[Edge]) -> bool:
    es = frozenset(edge(u, v) for u, v in edges if u != v)
    verts = {x for e in es for x in e}
    if len(verts) >= 3 and len(es) > 3 * len(verts) - 6:
        return False
    return _kuratowski_cached(es) is None


def is_outerplanar(edges: Iterable[Edge]) -> bool:
    """Outerplanar iff the vertices admit a circular order with no two chords interleaving."""
    return _outer_cached(frozenset(edge(u, v) for u, v in edges if u != v))


@lru_cache(maxsize=1 << 16)
def _outer_cached(edges: frozenset) -> bool:
    adj = _adjacency(edges)
    verts = sorted(adj)
    n = len(verts)
    if n <= 3:
        return True
    if len(edges) > 2 * n - 3:
        return False
    where: dict[int, int] = {}
    closed: list[tuple[int, int]] = []
    left = {v: len(adj[v]) for v in verts}  # neighbours not yet placed

    def place(x) -> bool:
        p = len(where)
        spans = sorted(where[y] for y in adj[x] if y in where)
        for i in spans:
            for a, b in closed:
                if a < i < b:
                    return False
        where[x] = p
        for y in adj[x]:
            left[y] -= 1
        closed.extend((i, p) for i in spans)
        return True

    def unplace(x, count):
        del where[x]
        for y in adj[x]:
            left[y] += 1
        del closed[len(closed) - count:]

    order: list[int] = []

    def open_inside() -> bool:
        # a placed vertex strictly inside a closed chord can no longer reach later vertices
        for v in order:
            if left[v]:
                pv = where[v]
                for a, b in closed:
                    if a < pv < b:
                        return True
        return False

    def rec() -> bool:
        if len(order) == n:
            return True
        for x in verts:
            if x in where:
                continue
            # reflections: the second vertex precedes the last one
            if len(order) == n - 1 and n > 2 and x < order[1]:
                continue
            count = sum(1 for y in adj[x] if y in where)
            if not place(x):
                continue
            order.append(x)
            if not open_inside() and rec():
                return True
            order.pop()
            unplace(x, count)
        return False

    order.append(verts[0])
    place(verts[0])
    return rec()
