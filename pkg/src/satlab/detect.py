"""Subgraph containment (not induced) for forbidden patterns.

``contains_copy`` decides whether a graph has a copy of F.  ``creates_copy``
decides whether adding one edge to a graph creates a copy of F through that
edge; the search is anchored on the new edge so only embeddings using it are
explored.  Complete bipartite patterns and single stars get dedicated
routines built on common-neighbourhood counting; everything else goes through
a backtracking matcher over bit rows.
"""

from __future__ import annotations

from typing import Callable, Iterator, MutableSequence, Sequence

from .graph import Edge, Graph, iter_bits, norm_edge
from .pattern import Pattern, as_pattern


class SearchBudgetExceeded(RuntimeError):
    """The node budget ran out before the search could decide."""


class _Counter:
    __slots__ = ("nodes", "limit")

    def __init__(self, limit: int | None) -> None:
        self.nodes = 0
        self.limit = limit

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise SearchBudgetExceeded(f"search exceeded {self.limit} nodes")


def at_least(rows: Sequence[int], members: int, k: int) -> int:
    """Mask of vertices adjacent to at least ``k`` vertices of ``members``."""
    if k <= 0:
        return (1 << len(rows)) - 1
    if members.bit_count() < k:
        return 0
    c = [0] * (k + 1)
    while members:
        low = members & -members
        r = rows[low.bit_length() - 1]
        members ^= low
        for j in range(k, 1, -1):
            c[j] |= c[j - 1] & r
        c[1] |= r
    return c[k]


# ------------------------------------------------------------ generic matcher

Plan = list[tuple[int, tuple[int, ...], int]]


def _plan(f: Graph, anchor: tuple[int, int] | None = None) -> Plan:
    """Matching order: (pattern vertex, positions of earlier neighbours, degree)."""
    deg = f.degrees()
    order: list[int] = list(anchor) if anchor else []
    placed = sum(1 << v for v in order)
    while len(order) < f.n:
        best = None
        for v in range(f.n):
            if placed >> v & 1:
                continue
            key = ((f.rows[v] & placed).bit_count(), deg[v], -v)
            if best is None or key > best[0]:
                best = (key, v)
        order.append(best[1])
        placed |= 1 << best[1]
    pos = {v: i for i, v in enumerate(order)}
    return [
        (v, tuple(sorted(pos[u] for u in iter_bits(f.rows[v]) if pos[u] < i)), deg[v])
        for i, v in enumerate(order)
    ]


def _embeddings(
    rows: Sequence[int], plan: Plan, img: list[int], used: int, counter: _Counter
) -> Iterator[list[int]]:
    idx = len(img)
    if idx == len(plan):
        yield img
        return
    _, nbrs, d = plan[idx]
    if nbrs:
        cand = rows[img[nbrs[0]]]
        for j in nbrs[1:]:
            cand &= rows[img[j]]
    else:
        cand = (1 << len(rows)) - 1
    cand &= ~used
    while cand:
        low = cand & -cand
        cand ^= low
        c = low.bit_length() - 1
        counter.tick()
        if rows[c].bit_count() < d:
            continue
        img.append(c)
        yield from _embeddings(rows, plan, img, used | low, counter)
        img.pop()


def _first(it: Iterator[list[int]]) -> list[int] | None:
    for img in it:
        return list(img)
    return None


def _generic_find(rows: Sequence[int], f: Graph, counter: _Counter) -> dict[int, int] | None:
    if f.n > len(rows):
        return None
    plan = _plan(f)
    img = _first(_embeddings(rows, plan, [], 0, counter))
    if img is None:
        return None
    return {plan[i][0]: h for i, h in enumerate(img)}


def _anchored_find(
    rows: Sequence[int], f: Graph, u: int, v: int, counter: _Counter
) -> dict[int, int] | None:
    """An embedding of ``f`` in ``rows`` mapping some pattern edge onto ``uv``."""
    du, dv = rows[u].bit_count(), rows[v].bit_count()
    for a, b in f.edges():
        for x, y in ((a, b), (b, a)):
            if f.degree(x) > du or f.degree(y) > dv:
                continue
            plan = _plan(f, (x, y))
            img = _first(_embeddings(rows, plan, [u, v], (1 << u) | (1 << v), counter))
            if img is not None:
                return {plan[i][0]: h for i, h in enumerate(img)}
    return None


# ---------------------------------------------------------- K_{s,t} and stars

def _has_kst(rows: Sequence[int], s: int, t: int) -> tuple[int, ...] | None:
    """An s-set X with |N(X)| >= t, as a sorted tuple, or None."""
    eligible = 0
    for v, r in enumerate(rows):
        if r.bit_count() >= t:
            eligible |= 1 << v

    def rec(common: int, lo: int, k: int, chosen: list[int]) -> tuple[int, ...] | None:
        cand = (eligible if not chosen else at_least(rows, common, t)) >> (lo + 1) << (lo + 1)
        if k == 1:
            if cand:
                return tuple(chosen) + ((cand & -cand).bit_length() - 1,)
            return None
        for x in iter_bits(cand):
            nxt = common & rows[x]
            if nxt.bit_count() >= t:
                chosen.append(x)
                found = rec(nxt, x, k - 1, chosen)
                chosen.pop()
                if found:
                    return found
        return None

    return rec((1 << len(rows)) - 1, -1, s, [])


def _orient(rows: Sequence[int], x: int, y: int, s1: int, t1: int) -> bool:
    """Is there a copy of K_{s1+1, t1+1} through xy with x on the (s1+1)-side?

    Equivalently: an s1-subset Z of N(y) with |N(x) ∩ N(Z)| >= t1.
    """
    common = rows[x]
    if common.bit_count() < t1:
        return False
    if s1 == 0:
        return True
    return _pick(rows, common, rows[y], s1, t1)


def _pick(rows: Sequence[int], common: int, pool: int, k: int, t1: int) -> bool:
    if pool.bit_count() < k:
        return False
    if k == 1 and pool.bit_count() > common.bit_count() * t1:
        return bool(pool & at_least(rows, common, t1))
    while pool:
        low = pool & -pool
        pool ^= low
        nxt = common & rows[low.bit_length() - 1]
        if nxt.bit_count() >= t1:
            if k == 1 or _pick(rows, nxt, pool, k - 1, t1):
                return True
    return False


def _kst_creates(rows: Sequence[int], s: int, t: int, u: int, v: int) -> bool:
    if _orient(rows, u, v, s - 1, t - 1):
        return True
    return s != t and _orient(rows, v, u, s - 1, t - 1)


# ------------------------------------------------------------------ dispatch

Prober = Callable[[MutableSequence[int], int, int], bool]


def make_prober(f: Pattern | Graph | str, budget: int | None = None) -> Prober:
    """Return ``probe(rows, u, v)``: does adding the absent edge uv create a copy of F?

    ``rows`` is a mutable list of bit rows; the generic path flips the edge
    in temporarily and restores it before returning.
    """
    pat = as_pattern(f)
    if pat.is_star:
        t1 = pat.star_degrees[0] - 1
        return lambda rows, u, v: rows[u].bit_count() >= t1 or rows[v].bit_count() >= t1
    if pat.kst is not None:
        s, t = pat.kst
        return lambda rows, u, v: _kst_creates(rows, s, t, u, v)
    fg = pat.graph

    def probe(rows: MutableSequence[int], u: int, v: int) -> bool:
        bu, bv = 1 << u, 1 << v
        rows[u] |= bv
        rows[v] |= bu
        try:
            return _anchored_find(rows, fg, u, v, _Counter(budget)) is not None
        finally:
            rows[u] &= ~bv
            rows[v] &= ~bu

    return probe


def contains_copy(g: Graph, f: Pattern | Graph | str, budget: int | None = None) -> bool:
    """True iff ``g`` has a (not necessarily induced) subgraph isomorphic to F.

    Raises :class:`SearchBudgetExceeded` if ``budget`` search nodes do not
    suffice; the answer is never guessed.
    """
    pat = as_pattern(f)
    if pat.order > g.n or pat.size > g.m:
        return False
    if pat.is_star:
        return g.max_degree() >= pat.star_degrees[0]
    if pat.kst is not None and pat.kst[0] >= 2:
        s, t = pat.kst
        return _has_kst(g.rows, s, t) is not None
    return _generic_find(g.rows, pat.graph, _Counter(budget)) is not None


def find_copy(g: Graph, f: Pattern | Graph | str, budget: int | None = None) -> dict[int, int] | None:
    """An embedding {pattern vertex: host vertex} of F into ``g``, or None."""
    pat = as_pattern(f)
    if pat.order > g.n or pat.size > g.m:
        return None
    return _generic_find(g.rows, pat.graph, _Counter(budget))


def _check_edge(g_host: Graph, h: Graph, e: Edge) -> tuple[int, int]:
    u, v = e
    if h.n != g_host.n:
        raise ValueError("host and subgraph have different vertex counts")
    if u == v or not (0 <= u < h.n and 0 <= v < h.n):
        raise ValueError(f"invalid edge {e}")
    if not g_host.has_edge(u, v):
        raise ValueError(f"edge {e} is not an edge of the host graph")
    if h.has_edge(u, v):
        raise ValueError(f"edge {e} is already in the subgraph")
    return u, v


def creates_copy(
    g_host: Graph, h: Graph, f: Pattern | Graph | str, e: Edge, budget: int | None = None
) -> bool:
    """True iff ``h + e`` contains a copy of F that uses ``e``."""
    u, v = _check_edge(g_host, h, e)
    return make_prober(f, budget)(list(h.rows), u, v)


def find_created_copy(
    g_host: Graph, h: Graph, f: Pattern | Graph | str, e: Edge, budget: int | None = None
) -> dict[int, int] | None:
    """Witness embedding for :func:`creates_copy` via the anchored generic search."""
    u, v = _check_edge(g_host, h, e)
    rows = list(h.rows)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return _anchored_find(rows, as_pattern(f).graph, u, v, _Counter(budget))


def iter_embeddings(g: Graph, f: Pattern | Graph | str, budget: int | None = None) -> Iterator[dict[int, int]]:
    """Every injective edge-preserving map of F into ``g``."""
    fg = as_pattern(f).graph
    if fg.n > g.n:
        return
    plan = _plan(fg)
    for img in _embeddings(g.rows, plan, [], 0, _Counter(budget)):
        yield {plan[i][0]: h for i, h in enumerate(img)}


def copy_edge_sets(g: Graph, f: Pattern | Graph | str, budget: int | None = None) -> set[frozenset[Edge]]:
    """The distinct edge sets of copies of F in ``g``."""
    fg = as_pattern(f).graph
    fedges = fg.edge_list()
    out = set()
    for emb in iter_embeddings(g, fg, budget):
        out.add(frozenset(norm_edge(emb[a], emb[b]) for a, b in fedges))
    return out
