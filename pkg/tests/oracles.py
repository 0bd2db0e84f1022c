"""Brute-force reference implementations used only by the tests.

They share no code with the package beyond the Graph container.
"""

from __future__ import annotations

import itertools

from satlab.graph import Graph


def edge_set(g: Graph) -> set[tuple[int, int]]:
    return {(u, v) for u in range(g.n) for v in range(u + 1, g.n) if g.has_edge(u, v)}


def brute_contains(g: Graph, f: Graph) -> bool:
    fe = edge_set(f)
    ge = edge_set(g)
    if f.n > g.n or len(fe) > len(ge):
        return False
    for img in itertools.permutations(range(g.n), f.n):
        if all(tuple(sorted((img[a], img[b]))) in ge for a, b in fe):
            return True
    return False


def brute_creates(h: Graph, f: Graph, e: tuple[int, int]) -> bool:
    """Some copy of f in h + e uses e."""
    u, v = e
    he = edge_set(h) | {tuple(sorted(e))}
    fe = edge_set(f)
    for img in itertools.permutations(range(h.n), f.n):
        mapped = {tuple(sorted((img[a], img[b]))) for a, b in fe}
        if mapped <= he and tuple(sorted(e)) in mapped:
            return True
    return False


def brute_saturated(g: Graph, h_edges, f: Graph) -> bool:
    h = Graph.from_edges(g.n, h_edges)
    if brute_contains(h, f):
        return False
    for e in edge_set(g) - edge_set(h):
        if not brute_contains(h.with_edges([e]), f):
            return False
    return True


def brute_sat(g: Graph, f: Graph) -> int:
    edges = sorted(edge_set(g))
    for k in range(len(edges) + 1):
        for sub in itertools.combinations(edges, k):
            if brute_saturated(g, sub, f):
                return k
    raise AssertionError("the host itself or a subgraph must be saturated")


def brute_alpha_k(g: Graph, k: int) -> int:
    best = 0
    for size in range(g.n, 0, -1):
        for sub in itertools.combinations(range(g.n), size):
            s = set(sub)
            if all(sum(1 for y in s if g.has_edge(x, y)) <= k for x in s):
                return size
    return best


def random_graph(rng, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
