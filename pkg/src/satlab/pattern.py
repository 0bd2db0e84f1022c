"""Forbidden patterns: parsing and every structural parameter the bounds use.

Pattern mini-language::

    complete:r            K_r
    kst:s,t               K_{s,t}  (vertices 0..s-1 form the s-side)
    star:t                K_{1,t}
    starforest:t1,...,tk  disjoint union of K_{1,t_i}
    cycle:k               C_k, k >= 3
    path:k                path on k vertices
    g6:<graph6>           any graph in graph6
    edges:[N;]u-v,...     explicit edge list, optional vertex count N
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .formats import GraphFormatError, from_graph6
from .graph import Graph, VertexSet, complete_graph, iter_bits
from .independence import max_k_independent


class PatternError(ValueError):
    pass


class PatternSyntaxError(PatternError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


DEFAULT_INDEPENDENCE_LIMIT = 24


@dataclass(frozen=True)
class BipartiteAnalysis:
    components: tuple[VertexSet, ...]
    bipartitions: tuple[tuple[VertexSet, VertexSet], ...]
    a: int
    delta: int


@dataclass(frozen=True)
class Pattern:
    source: str
    graph: Graph
    components: tuple[VertexSet, ...]
    has_isolated: bool
    odd_cycle: tuple[int, ...] | None
    bipartitions: tuple[tuple[VertexSet, VertexSet], ...] | None
    a: int | None
    delta: int | None
    indep_set: VertexSet
    kt_b: int
    kt_d: int
    r_value: int | None
    w_value: int | None
    kst: tuple[int, int] | None
    star_degrees: tuple[int, ...] | None

    @property
    def order(self) -> int:
        return self.graph.n

    @property
    def size(self) -> int:
        return self.graph.m

    @property
    def indep_size(self) -> int:
        return len(self.indep_set)

    @property
    def bipartite(self) -> bool:
        return self.odd_cycle is None

    @property
    def is_star(self) -> bool:
        return self.star_degrees is not None and len(self.star_degrees) == 1

    @property
    def is_clique(self) -> bool:
        n = self.graph.n
        return n >= 2 and self.graph.m == n * (n - 1) // 2

    def __repr__(self) -> str:
        return f"Pattern({self.source!r}, n={self.order}, m={self.size})"


# ---------------------------------------------------------------- parsing

_HEAD = re.compile(r"([a-z0-9]+):")


def _ints(body: str, offset: int, count: int | None = None) -> list[int]:
    out = []
    pos = offset
    for tok in body.split(","):
        stripped = tok.strip()
        if not stripped.isdigit():
            raise PatternSyntaxError(f"expected a non-negative integer, got {tok!r}", pos)
        out.append(int(stripped))
        pos += len(tok) + 1
    if count is not None and len(out) != count:
        raise PatternSyntaxError(f"expected {count} integer(s), got {len(out)}", offset)
    return out


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PatternError(message)


def _kst_graph(s: int, t: int) -> Graph:
    return Graph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def _star_forest(ts: list[int]) -> Graph:
    edges = []
    base = 0
    for t in ts:
        edges.extend((base, base + j) for j in range(1, t + 1))
        base += t + 1
    return Graph.from_edges(base, edges)


def _parse_edges(body: str, offset: int) -> Graph:
    n = None
    text = body
    if ";" in body:
        head, text = body.split(";", 1)
        if not head.strip().isdigit():
            raise PatternSyntaxError(f"expected vertex count before ';', got {head!r}", offset)
        n = int(head)
        offset += len(head) + 1
    edges = []
    pos = offset
    for tok in text.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*-\s*(\d+)\s*", tok)
        if not m:
            raise PatternSyntaxError(f"expected an edge 'u-v', got {tok!r}", pos)
        edges.append((int(m.group(1)), int(m.group(2))))
        pos += len(tok) + 1
    top = max(max(e) for e in edges) + 1
    if n is None:
        n = top
    _require(n >= top, f"edge endpoint {top - 1} exceeds vertex count {n}")
    for u, v in edges:
        _require(u != v, f"loop at vertex {u}")
    if len({(min(e), max(e)) for e in edges}) != len(edges):
        raise PatternError("duplicate edge in pattern")
    return Graph.from_edges(n, edges)


def pattern_graph(spec: str) -> Graph:
    """Build the graph described by a pattern string."""
    m = _HEAD.match(spec)
    if not m:
        raise PatternSyntaxError("expected '<kind>:<parameters>'", 0)
    kind, body, off = m.group(1), spec[m.end():], m.end()
    if not body:
        raise PatternSyntaxError("missing parameters", off)
    if kind == "complete":
        (r,) = _ints(body, off, 1)
        _require(r >= 1, "complete:r needs r >= 1")
        return complete_graph(r)
    if kind == "kst":
        s, t = _ints(body, off, 2)
        _require(s >= 1 and t >= 1, "kst:s,t needs s, t >= 1")
        s, t = min(s, t), max(s, t)
        return _kst_graph(s, t)
    if kind == "star":
        (t,) = _ints(body, off, 1)
        _require(t >= 1, "star:t needs t >= 1")
        return _star_forest([t])
    if kind == "starforest":
        ts = _ints(body, off)
        _require(all(t >= 1 for t in ts), "starforest degrees must be >= 1")
        return _star_forest(sorted(ts, reverse=True))
    if kind == "cycle":
        (k,) = _ints(body, off, 1)
        _require(k >= 3, "cycle:k needs k >= 3")
        return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])
    if kind == "path":
        (k,) = _ints(body, off, 1)
        _require(k >= 1, "path:k needs k >= 1")
        return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])
    if kind == "g6":
        try:
            return from_graph6(body)
        except GraphFormatError as exc:
            raise PatternSyntaxError(str(exc), off) from None
    if kind == "edges":
        return _parse_edges(body, off)
    raise PatternSyntaxError(f"unknown pattern kind {kind!r}", 0)


# ------------------------------------------------------- structure helpers

def _two_colour(f: Graph, comp: VertexSet) -> tuple[int, int] | tuple[int, int, int]:
    """BFS 2-colouring of one component.

    Returns ``(side0, side1)`` masks, or ``(-1, x, y)`` naming an edge whose
    endpoints received the same colour.
    """
    root = next(iter(comp))
    colour = {root: 0}
    parent = {root: -1}
    frontier = [root]
    while frontier:
        nxt = []
        for x in frontier:
            for y in iter_bits(f.rows[x]):
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    parent[y] = x
                    nxt.append(y)
                elif colour[y] == colour[x]:
                    return (-1, x, y), parent  # type: ignore[return-value]
        frontier = nxt
    s0 = sum(1 << v for v, c in colour.items() if c == 0)
    s1 = sum(1 << v for v, c in colour.items() if c == 1)
    return (s0, s1), parent  # type: ignore[return-value]


def _odd_cycle(x: int, y: int, parent: dict[int, int]) -> tuple[int, ...]:
    px = [x]
    while parent[px[-1]] != -1:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] != -1:
        py.append(parent[py[-1]])
    on_x = {v: i for i, v in enumerate(px)}
    for j, v in enumerate(py):
        if v in on_x:
            return tuple(px[: on_x[v] + 1] + py[:j][::-1])
    raise AssertionError("BFS tree paths must meet")


def find_odd_cycle(f: Graph) -> tuple[int, ...] | None:
    for comp in f.components():
        res, parent = _two_colour(f, comp)
        if res[0] == -1:
            return _odd_cycle(res[1], res[2], parent)
    return None


def layered_upper_constant(a: int, delta: int, p: Fraction) -> Fraction:
    """Leading constant (δ-1)/p^(a-1) - (δ-2a+1)/2 of the layered upper bound."""
    return Fraction(delta - 1) / p ** (a - 1) - Fraction(delta - 2 * a + 1, 2)


def analyze_bipartition(f: Graph, p: Fraction | float = Fraction(1, 2)) -> BipartiteAnalysis:
    """Oriented component bipartitions (A_i, B_i) with |A_i| <= |B_i|, plus a and δ.

    Components whose two sides have equal size may be oriented either way;
    every assignment of those attaining ``a`` is tried and the one giving the
    smallest upper-bound constant at ``p`` is kept (first found on ties).
    """
    p = Fraction(p) if not isinstance(p, Fraction) else p
    comps = f.components()
    for comp in comps:
        if len(comp) == 1:
            raise PatternError(
                f"pattern has isolated vertex {next(iter(comp))}; "
                "the layered bound requires a pattern with no isolated vertices"
            )
    sides = []
    for comp in comps:
        res, parent = _two_colour(f, comp)
        if res[0] == -1:
            cyc = _odd_cycle(res[1], res[2], parent)
            raise PatternError(f"pattern is not bipartite: odd cycle {list(cyc)}")
        sides.append(res)
    n = f.n

    def small(pair: tuple[int, int]) -> int:
        return min(pair[0].bit_count(), pair[1].bit_count())

    a = max((small(sd) for sd in sides), default=0)
    tied = [i for i, sd in enumerate(sides)
            if sd[0].bit_count() == sd[1].bit_count() == a]

    def oriented(flips: dict[int, bool]) -> list[tuple[int, int]]:
        out = []
        for i, (s0, s1) in enumerate(sides):
            if s0.bit_count() > s1.bit_count() or (i in flips and flips[i]):
                s0, s1 = s1, s0
            out.append((s0, s1))
        return out

    def delta_of(parts: list[tuple[int, int]]) -> int:
        return min(
            f.degree(v)
            for A, _ in parts if A.bit_count() == a
            for v in iter_bits(A)
        )

    best = None
    for combo in itertools.product((False, True), repeat=len(tied)):
        parts = oriented(dict(zip(tied, combo)))
        d = delta_of(parts)
        val = layered_upper_constant(a, d, p) if p > 0 else Fraction(d)
        if best is None or val < best[0]:
            best = (val, parts, d)
    assert best is not None
    _, parts, delta = best
    return BipartiteAnalysis(
        components=tuple(comps),
        bipartitions=tuple((VertexSet(n, A), VertexSet(n, B)) for A, B in parts),
        a=a,
        delta=delta,
    )


def max_independent_set(f: Graph, limit: int = DEFAULT_INDEPENDENCE_LIMIT) -> VertexSet:
    """A maximum independent set of ``f`` (exact branch and bound)."""
    if f.n > limit:
        raise PatternError(f"pattern has {f.n} vertices, above the exact limit {limit}")
    res = max_k_independent(f.rows, 0)
    return VertexSet(f.n, res.members)


def r_value(f: Graph) -> int:
    """min over edges xy of max(d(x), d(y))."""
    if f.m == 0:
        raise PatternError("r(F) is undefined for an edgeless pattern")
    return min(max(f.degree(x), f.degree(y)) for x, y in f.edges())


def w_value(f: Graph) -> int:
    """min over edges xy of max(d(x), d(y)) + |N(x) ∩ N(y)|."""
    if f.m == 0:
        raise PatternError("w(F) is undefined for an edgeless pattern")
    rows = f.rows
    return min(
        max(f.degree(x), f.degree(y)) + (rows[x] & rows[y]).bit_count()
        for x, y in f.edges()
    )


def _kst_shape(f: Graph, comps: list[VertexSet]) -> tuple[int, int] | None:
    if len(comps) != 1 or f.n < 2:
        return None
    res, _ = _two_colour(f, comps[0])
    if res[0] == -1:
        return None
    s, t = sorted((res[0].bit_count(), res[1].bit_count()))
    return (s, t) if f.m == s * t else None


def _star_shape(f: Graph, comps: list[VertexSet]) -> tuple[int, ...] | None:
    degs = []
    for comp in comps:
        k = len(comp)
        if k < 2:
            return None
        sub = [f.degree(v) for v in comp]
        edges = sum(sub) // 2
        if edges != k - 1 or max(sub) != k - 1:
            return None
        degs.append(k - 1)
    return tuple(sorted(degs, reverse=True)) if degs else None


def analyze(
    f: Graph,
    source: str = "",
    p: Fraction | float = Fraction(1, 2),
    indep_limit: int = DEFAULT_INDEPENDENCE_LIMIT,
) -> Pattern:
    """Compute every derived parameter of the forbidden graph ``f``."""
    if f.n == 0:
        raise PatternError("pattern must have at least one vertex")
    comps = f.components()
    has_isolated = any(len(c) == 1 for c in comps)
    cyc = find_odd_cycle(f)
    bip = None
    a = delta = None
    if cyc is None and not has_isolated:
        ba = analyze_bipartition(f, p)
        bip, a, delta = ba.bipartitions, ba.a, ba.delta
    indep = max_independent_set(f, indep_limit)
    outside = [x for x in range(f.n) if x not in indep]
    kt_b = f.n - len(indep) - 1
    kt_d = min(((f.rows[x] & indep.bits).bit_count() for x in outside), default=0)
    return Pattern(
        source=source,
        graph=f,
        components=tuple(comps),
        has_isolated=has_isolated,
        odd_cycle=cyc,
        bipartitions=bip,
        a=a,
        delta=delta,
        indep_set=indep,
        kt_b=kt_b,
        kt_d=kt_d,
        r_value=r_value(f) if f.m else None,
        w_value=w_value(f) if f.m else None,
        kst=_kst_shape(f, comps),
        star_degrees=_star_shape(f, comps),
    )


def parse_pattern(spec: str, p: Fraction | float = Fraction(1, 2)) -> Pattern:
    """Parse a pattern string and run the full analysis."""
    return analyze(pattern_graph(spec.strip()), source=spec.strip(), p=p)


def as_pattern(f: "Pattern | Graph | str") -> Pattern:
    if isinstance(f, Pattern):
        return f
    if isinstance(f, Graph):
        return analyze(f)
    return parse_pattern(f)
