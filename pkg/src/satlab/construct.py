"""Explicit saturated-subgraph constructions.

* :func:`layered_construction` handles bipartite patterns in random hosts.
  It anchors small vertex sets V_i, takes the disjoint residual common
  neighbourhoods W_i, seeds with the complete bipartite pieces V_i x W_i
  and greedily completes.
* :func:`kt_construction` works in K_n.  It keeps every edge touching a
  fixed set B and greedily completes.
* :func:`star_construction` handles star forests.  Its graph is an
  independent set, a clique on h vertices and a (t_k - 1)-regular graph on
  the remaining vertices.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import kt_general_upper, to_fraction
from .detect import contains_copy
from .graph import Graph, RngSpec, VertexSet, as_generator, complete_graph, edges_between, iter_bits
from .pattern import Pattern, PatternError, analyze_bipartition, as_pattern
from .saturate import SaturationResult, greedy_complete

log = logging.getLogger(__name__)


class ConstructionError(ValueError):
    """The construction's preconditions do not hold for this input."""


def _members(mask: int) -> list[int]:
    return list(iter_bits(mask))


# ------------------------------------------------------------------ layered

@dataclass
class LayeredParams:
    a: int
    delta: int
    q: int
    p: float
    b_prob: float
    ell: int
    ell_formula: int
    v_sets: list[list[int]]
    w_sets: list[VertexSet]
    m_sets: list[VertexSet]
    r_set: VertexSet
    v2_set: VertexSet
    decomposition: dict = field(default_factory=dict)

    @property
    def v_prime(self) -> list[int]:
        return [v for vs in self.v_sets[self.ell:] for v in vs]

    @property
    def w_union(self) -> VertexSet:
        n = self.r_set.n
        bits = 0
        for w in self.w_sets[: self.ell]:
            bits |= w.bits
        return VertexSet(n, bits)

    def to_dict(self, full: bool = False) -> dict:
        out = {
            "a": self.a,
            "delta": self.delta,
            "q": self.q,
            "p": self.p,
            "b_prob": self.b_prob,
            "ell": self.ell,
            "ell_formula": self.ell_formula,
            "v_sets": self.v_sets,
            "w_sizes": [len(w) for w in self.w_sets],
            "m_sizes": [len(m) for m in self.m_sets],
            "r_size": len(self.r_set),
            "v2_size": len(self.v2_set),
            "decomposition": dict(self.decomposition),
        }
        if full:
            out["w_sets"] = [w.sorted() for w in self.w_sets]
            out["r_set"] = self.r_set.sorted()
            out["v2_set"] = self.v2_set.sorted()
        return out


def layered_ell(n: int, p: float, a: int) -> int:
    """floor(log_{1/b} n^(2/3)) with b = 1 - p^(a-1); at least 1."""
    b = 1 - float(p) ** (a - 1)
    if b <= 0 or n <= 1:
        return 1
    if b >= 1:
        raise ConstructionError("p = 0 leaves every common neighbourhood empty")
    return max(1, math.floor((2 / 3) * math.log(n) / -math.log(b)))


def _layers(g: Graph, a: int, q: int, ell: int):
    """V_i, W_i and M_i for a given ell, or None if they do not fit."""
    n = g.n
    sizes = [a - 1] * ell + [a + 1] * (q - 1)
    if sum(sizes) > n:
        return None
    v_sets, start = [], 0
    for s in sizes:
        v_sets.append(list(range(start, start + s)))
        start += s
    vmask = (1 << sum(sizes[:ell])) - 1
    vpmask = ((1 << start) - 1) & ~vmask
    full = (1 << n) - 1
    w_sets, m_sets, m_prev = [], [], 0
    for vs in v_sets:
        nb = full
        for x in vs:
            nb &= g.rows[x]
        w = nb & ~vmask & ~vpmask & ~m_prev
        if not w:
            return None
        w_sets.append(w)
        m_prev |= nb
        m_sets.append(m_prev)
    return v_sets, vmask, vpmask, w_sets, m_sets


def layered_construction(
    g: Graph,
    p: float,
    f: Pattern | str,
    policy: str = "lex",
    rng: RngSpec | int | None = None,
    *,
    verify: bool = True,
) -> tuple[SaturationResult, LayeredParams]:
    """Seed with the pieces E(V_i, W_i), then greedily complete.

    The V_i are the lowest-indexed unused vertices.  ell starts at the
    asymptotic value and is lowered until every W_i is nonempty.
    """
    pat = as_pattern(f)
    try:
        ba = analyze_bipartition(pat.graph, to_fraction(p))
    except PatternError as exc:
        raise ConstructionError(str(exc)) from exc
    a, delta = ba.a, ba.delta
    if a < 2:
        raise ConstructionError("a < 2: the pattern is a star forest, use star_construction")
    q = sum(1 for A, _ in ba.bipartitions if len(A) == a)
    ell_formula = layered_ell(g.n, p, a)
    ell, layers = ell_formula, None
    while ell >= 1:
        layers = _layers(g, a, q, ell)
        if layers is not None:
            break
        ell -= 1
    if layers is None:
        raise ConstructionError(f"n={g.n} too small: some W_i is empty even with ell=1")
    v_sets, vmask, vpmask, w_sets, m_sets = layers
    n = g.n
    seed = []
    for vs, w in zip(v_sets, w_sets):
        seed.extend((x, y) for x in vs for y in iter_bits(w))
    h0 = Graph.from_edges(n, seed)
    if contains_copy(h0, pat):
        raise AssertionError("layered seed graph contains the pattern")
    res = greedy_complete(g, h0, pat, policy, rng, verify=verify, method="layered")

    wmask = 0
    for w in w_sets[:ell]:
        wmask |= w
    full = (1 << n) - 1
    out_set, w_set = VertexSet(n, full & ~wmask), VertexSet(n, wmask)
    h = res.graph
    params = LayeredParams(
        a=a,
        delta=delta,
        q=q,
        p=float(p),
        b_prob=1 - float(p) ** (a - 1),
        ell=ell,
        ell_formula=ell_formula,
        v_sets=v_sets,
        w_sets=[VertexSet(n, w) for w in w_sets],
        m_sets=[VertexSet(n, m) for m in m_sets],
        r_set=VertexSet(n, full & ~vmask & ~wmask),
        v2_set=VertexSet(n, vpmask & m_sets[ell - 1]),
        decomposition={
            "outside_w": edges_between(h, out_set, out_set),
            "outside_to_w": edges_between(h, out_set, w_set),
            "inside_w": edges_between(h, w_set, w_set),
            "seed": h0.m,
        },
    )
    res.params.update({"ell": ell, "a": a, "delta": delta, "q": q})
    return res, params


# ------------------------------------------------------- independent-set (K_n)

def kt_construction(
    n: int,
    f: Pattern | str,
    policy: str = "lex",
    rng: RngSpec | int | None = None,
    *,
    verify: bool = True,
) -> SaturationResult:
    """Keep every edge of K_n touching B = {0..b-1} and greedily complete.

    With S a maximum independent set of F, b = |V(F)| - |S| - 1.  The
    result has at most (2b + d - 1)/2 n - b(b + d)/2 edges.
    """
    pat = as_pattern(f)
    if n < pat.order:
        raise ConstructionError(f"n={n} is smaller than |V(F)|={pat.order}")
    if pat.size == 0:
        raise ConstructionError("pattern has no edges")
    b, d = pat.kt_b, pat.kt_d
    g = complete_graph(n)
    seed = [(u, v) for u in range(b) for v in range(u + 1, n)]
    h0 = Graph.from_edges(n, seed)
    if contains_copy(h0, pat):
        raise AssertionError("seed graph around B contains the pattern")
    res = greedy_complete(g, h0, pat, policy, rng, verify=verify, method="kt")
    bound = kt_general_upper(n, pat)
    res.params.update({"b": b, "d": d, "bound": str(bound)})
    if res.m > bound:
        raise AssertionError(f"construction has {res.m} edges, above the bound {bound}")
    return res


# --------------------------------------------------------------- star forests

@dataclass
class StarParams:
    star_degrees: tuple[int, ...]
    h: int
    ell_target: int
    ell: int
    s_set: VertexSet
    clique_set: VertexSet
    regular_complete: bool
    fallback: bool

    @property
    def degree(self) -> int:
        return self.star_degrees[-1] - 1

    def to_dict(self, full: bool = False) -> dict:
        out = {
            "star_degrees": list(self.star_degrees),
            "h": self.h,
            "ell_target": self.ell_target,
            "ell": self.ell,
            "s_set": self.s_set.sorted(),
            "clique_set": self.clique_set.sorted(),
            "regular_complete": self.regular_complete,
            "fallback": self.fallback,
        }
        return out


def star_ell_target(n: int, p: float) -> int:
    if p >= 1:
        return 1
    if p <= 0:
        return n
    return max(1, math.floor(2 * math.log(n) / -math.log(1 - p)))


def _random_bit(mask: int, gen: np.random.Generator) -> int:
    bits = _members(mask)
    return bits[int(gen.integers(len(bits)))]


def _greedy_independent(rows, pool: int, gen: np.random.Generator) -> list[int]:
    """Repeatedly take a vertex of least remaining degree (random ties)."""
    out = []
    rest = pool
    while rest:
        best, cands = None, 0
        for v in iter_bits(rest):
            d = (rows[v] & rest).bit_count()
            if best is None or d < best:
                best, cands = d, 1 << v
            elif d == best:
                cands |= 1 << v
        v = _random_bit(cands, gen)
        out.append(v)
        rest &= ~rows[v] & ~(1 << v)
    return out


def _find_clique(rows, pool: int, size: int, limit: int = 200_000) -> list[int] | None:
    nodes = 0

    def rec(cand: int, chosen: list[int]) -> list[int] | None:
        nonlocal nodes
        if len(chosen) == size:
            return chosen
        order = sorted(iter_bits(cand), key=lambda v: -(rows[v] & cand).bit_count())
        for v in order:
            nodes += 1
            if nodes > limit:
                return None
            if len(chosen) + 1 + (cand & rows[v]).bit_count() < size:
                continue
            found = rec(cand & rows[v], chosen + [v])
            if found:
                return found
            cand &= ~(1 << v)
        return None

    return rec(pool, []) if size > 0 else []


def regular_subgraph(rows, pool: int, degree: int, gen: np.random.Generator, rounds: int = 50):
    """Try to pick a ``degree``-regular spanning subgraph of G[pool].

    Greedy edge selection is followed by swap repair.  A deficient u can be
    fixed by deleting an edge xy and adding ux and wy, where w is deficient
    too.  Returns ``(rows_h, deficit_mask)``; the mask is zero on success.
    """
    n = len(rows)
    h = [0] * n
    need = [0] * n
    for v in iter_bits(pool):
        need[v] = degree
    short = pool if degree > 0 else 0

    def add(x: int, y: int) -> None:
        nonlocal short
        h[x] |= 1 << y
        h[y] |= 1 << x
        for z in (x, y):
            need[z] -= 1
            if need[z] == 0:
                short &= ~(1 << z)

    for v in gen.permutation(_members(pool)).tolist():
        while need[v] > 0:
            cand = rows[v] & short & ~h[v] & ~(1 << v)
            if not cand:
                break
            add(v, _random_bit(cand, gen))

    for _ in range(rounds):
        if not short:
            break
        progress = False
        for u in gen.permutation(_members(short)).tolist():
            if need[u] <= 0:
                continue
            cand = rows[u] & short & ~h[u] & ~(1 << u)
            if cand:
                add(u, _random_bit(cand, gen))
                progress = True
                continue
            partners = ([u] if need[u] >= 2 else []) + [w for w in iter_bits(short) if w != u]
            done = False
            for w in partners:
                xs = rows[u] & pool & ~h[u] & ~(1 << u) & ~(1 << w)
                ys = rows[w] & pool & ~h[w] & ~(1 << w) & ~(1 << u)
                for x in iter_bits(xs):
                    ym = h[x] & ys
                    if ym:
                        y = (ym & -ym).bit_length() - 1
                        h[x] &= ~(1 << y)
                        h[y] &= ~(1 << x)
                        need[x] += 1
                        need[y] += 1
                        add(u, x)
                        add(w, y)
                        done = True
                        break
                if done:
                    break
            progress |= done
        if not progress:
            break
    return h, short


def star_construction(
    g: Graph,
    p: float,
    f: Pattern | str,
    rng: RngSpec | int | None = None,
    *,
    verify: bool = True,
) -> tuple[SaturationResult, StarParams]:
    """Independent set S, clique on h = |V(F)| - 1 vertices, (t_k - 1)-regular rest.

    If no regular graph of the required degree is found on the rest, the
    partial graph is greedily completed instead, so a saturated result is
    always returned.
    """
    pat = as_pattern(f)
    if pat.star_degrees is None:
        raise ConstructionError("pattern is not a disjoint union of stars")
    degs = pat.star_degrees
    h = pat.order - 1
    d = degs[-1] - 1
    n = g.n
    if n < pat.order:
        raise ConstructionError(f"n={n} is smaller than |V(F)|={pat.order}")
    gen = as_generator(rng)
    rows = g.rows
    full = (1 << n) - 1

    target = min(star_ell_target(n, p), n - h)
    best: list[int] = []
    for _ in range(8):
        found = _greedy_independent(rows, full, gen)
        if len(found) > len(best):
            best = found
        if len(best) >= target:
            break
    ell = min(target, len(best))
    while ell > 0 and ((n - h - ell) * d) % 2:
        ell -= 1
    if ell < target:
        log.warning("independent set of size %d not found; using %d", target, ell)
    s_mask = sum(1 << v for v in best[:ell])

    clique = _find_clique(rows, full & ~s_mask, h)
    fallback = False
    regular_ok = False
    if clique is None:
        log.warning("no clique of size %d outside S; falling back to greedy completion", h)
        clique, k_mask, seed_rows = [], 0, [0] * n
        fallback = True
    else:
        k_mask = sum(1 << v for v in clique)
        rest = full & ~s_mask & ~k_mask
        seed_rows, short = regular_subgraph(rows, rest, d, gen)
        for v in clique:
            seed_rows[v] |= k_mask & ~(1 << v)
        regular_ok = short == 0
        fallback = not regular_ok
    seed = Graph(n, seed_rows, check=False)
    if contains_copy(seed, pat):
        raise AssertionError("star seed graph contains the pattern")
    if fallback:
        res = greedy_complete(g, seed, pat, "rand", gen, verify=verify, method="star")
    else:
        from .saturate import Verdict, verify_saturated

        verdict = verify_saturated(g, seed, pat) if verify else Verdict("unknown", "not verified")
        res = SaturationResult(g, seed, "star", verdict, {})
    params = StarParams(
        star_degrees=tuple(degs),
        h=h,
        ell_target=target,
        ell=ell,
        s_set=VertexSet(n, s_mask),
        clique_set=VertexSet(n, k_mask),
        regular_complete=regular_ok,
        fallback=fallback,
    )
    res.params.update({"ell": ell, "h": h, "fallback": fallback})
    return res, params


__all__ = [
    "ConstructionError",
    "LayeredParams",
    "StarParams",
    "kt_construction",
    "layered_construction",
    "layered_ell",
    "regular_subgraph",
    "star_construction",
    "star_ell_target",
]
