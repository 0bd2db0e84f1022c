"""Saturation: verification, greedy completion, and exact / heuristic minima.

H is F-saturated in G when H is an F-free spanning subgraph of G and adding
any edge of E(G) \\ E(H) creates a copy of F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from .detect import (
    SearchBudgetExceeded,
    contains_copy,
    copy_edge_sets,
    find_copy,
    make_prober,
)
from .graph import Edge, Graph, RngSpec, as_generator, rows_to_numpy
from .independence import max_k_independent
from .pattern import Pattern, as_pattern

POLICIES = {
    "lex": "lex",
    "lexicographic": "lex",
    "rand": "rand",
    "random": "rand",
    "random-permutation": "rand",
    "mindeg": "mindeg",
    "min-degree-first": "mindeg",
}

DEFAULT_EDGE_LIMIT = 26


@dataclass(frozen=True)
class Verdict:
    status: str  # "pass" | "fail" | "unknown"
    reason: str = ""
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, dict):
            w = {str(k): v for k, v in sorted(w.items())}
        elif isinstance(w, tuple):
            w = list(w)
        return {"status": self.status, "reason": self.reason, "witness": w}


@dataclass
class SaturationResult:
    host: Graph
    graph: Graph
    method: str
    verdict: Verdict
    params: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def edges(self) -> list[Edge]:
        return self.graph.edge_list()

    def to_dict(self, with_edges: bool = False) -> dict:
        out = {
            "m": self.m,
            "n": self.host.n,
            "method": self.method,
            "verified": self.verdict.status,
            "witness": self.verdict.to_dict()["witness"],
        }
        if self.verdict.reason:
            out["reason"] = self.verdict.reason
        if with_edges:
            out["edges"] = [list(e) for e in self.edges]
        return out


def _as_subgraph(g: Graph, h: Graph | Iterable[Edge] | None) -> Graph:
    if h is None:
        return Graph.empty(g.n)
    if not isinstance(h, Graph):
        h = Graph.from_edges(g.n, h)
    if not g.contains_graph(h):
        raise ValueError("subgraph edges are not contained in the host graph")
    return h


def _missing_edges(g: Graph, h: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints of E(g) \\ E(h) in lexicographic order."""
    n = g.n
    if n == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    diff = [gr & ~hr for gr, hr in zip(g.rows, h.rows)]
    adj = np.triu(rows_to_numpy(diff, n), 1)
    us, vs = np.nonzero(adj)
    return us, vs


def verify_saturated(
    g: Graph, h: Graph | Iterable[Edge], f: Pattern | Graph | str, budget: int | None = None
) -> Verdict:
    """Check that ``h`` is F-saturated in ``g``; failures carry a concrete witness.

    ``budget`` bounds each individual search; if one runs out the verdict is
    ``unknown``.
    """
    pat = as_pattern(f)
    h = _as_subgraph(g, h)
    try:
        if contains_copy(h, pat, budget):
            try:
                emb = find_copy(h, pat, budget)
            except SearchBudgetExceeded:
                emb = None
            return Verdict("fail", "subgraph contains a copy of the pattern", emb)
        probe = make_prober(pat, budget)
        rows = list(h.rows)
        us, vs = _missing_edges(g, h)
        for u, v in zip(us.tolist(), vs.tolist()):
            if not probe(rows, u, v):
                return Verdict("fail", "adding this host edge creates no copy", (u, v))
    except SearchBudgetExceeded as exc:
        return Verdict("unknown", str(exc))
    return Verdict("pass")


def _edge_order(us: np.ndarray, vs: np.ndarray, h: Graph, policy: str, rng) -> np.ndarray:
    if policy == "lex":
        return np.arange(len(us))
    if policy == "rand":
        return as_generator(rng).permutation(len(us))
    # mindeg: smaller endpoint degree in the seed graph first, then the larger one
    deg = np.array(h.degrees() or [0], dtype=np.int64)
    du, dv = deg[us], deg[vs]
    return np.lexsort((vs, us, np.maximum(du, dv), np.minimum(du, dv)))


def greedy_complete(
    g: Graph,
    h0: Graph | Iterable[Edge] | None,
    f: Pattern | Graph | str,
    policy: str = "lex",
    rng: RngSpec | int | None = None,
    *,
    verify: bool = True,
    budget: int | None = None,
    method: str = "greedy",
) -> SaturationResult:
    """Extend the F-free graph ``h0`` to an F-saturated subgraph of ``g``.

    Every host edge outside ``h0`` is probed once, in the order given by
    ``policy`` (``lex``, ``rand`` or ``mindeg``), and kept iff it creates no
    copy of F.  One pass suffices: an edge rejected once stays rejected
    because the subgraph only grows.
    """
    pat = as_pattern(f)
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    policy = POLICIES[policy]
    h = _as_subgraph(g, h0)
    if contains_copy(h, pat, budget):
        raise ValueError("initial subgraph already contains a copy of the pattern")
    probe = make_prober(pat, budget)
    rows = list(h.rows)
    us, vs = _missing_edges(g, h)
    order = _edge_order(us, vs, h, policy, rng)
    us_l, vs_l = us[order].tolist(), vs[order].tolist()
    for u, v in zip(us_l, vs_l):
        if not probe(rows, u, v):
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    out = Graph(g.n, rows, check=False)
    verdict = verify_saturated(g, out, pat, budget) if verify else Verdict("unknown", "not verified")
    return SaturationResult(g, out, method, verdict, {"policy": policy})


def heuristic_min_sat(
    g: Graph,
    f: Pattern | Graph | str,
    restarts: int = 20,
    rng: RngSpec | int = 0,
    *,
    verify: bool = True,
) -> SaturationResult:
    """Best of ``restarts`` random-order greedy completions from the empty graph.

    Restart ``i`` uses ``RngSpec(seed, stream + i)``, so a single restart is
    exactly ``greedy_complete(g, None, f, "rand", rng)``.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    pat = as_pattern(f)
    base = rng if isinstance(rng, RngSpec) else RngSpec(int(rng))
    best = None
    for i in range(restarts):
        res = greedy_complete(g, None, pat, "rand", RngSpec(base.seed, base.stream + i), verify=False)
        if best is None or res.m < best.m:
            best = res
    assert best is not None
    verdict = verify_saturated(g, best.graph, pat) if verify else Verdict("unknown", "not verified")
    return SaturationResult(g, best.graph, "heuristic", verdict, {"restarts": restarts})


# --------------------------------------------------------------- exact search

@dataclass(frozen=True)
class ExactResult:
    """Outcome of :func:`exact_min_sat`.

    ``value`` is the exact saturation number, or None when the budget ran
    out; ``witness`` is then the best saturated subgraph found and
    ``lower_bound`` what the search managed to rule out.
    """

    value: int | None
    witness: Graph
    optimal: bool
    lower_bound: int
    nodes: int

    @property
    def best(self) -> int:
        return self.witness.m


class _Stop(Exception):
    pass


class _MaskSearch:
    """Minimum maximal F-free edge subset, over F-copies encoded as edge masks.

    For each host edge ``e`` we keep ``rests[e]``: the masks ``c - {e}`` over
    copies ``c`` that use ``e``.  A subset H is F-free iff no copy lies inside
    it, and an edge e outside H is blocked iff some rest of e lies inside H.
    """

    def __init__(self, m: int, copies: list[int], budget: int | None) -> None:
        self.full = (1 << m) - 1
        self.rests: list[list[int]] = [[] for _ in range(m)]
        for c in copies:
            x = c
            while x:
                low = x & -x
                x ^= low
                self.rests[low.bit_length() - 1].append(c ^ low)
        self.budget = budget
        self.nodes = 0

    def completes(self, e: int, inc: int) -> bool:
        return any(r & ~inc == 0 for r in self.rests[e])

    def solve(self, k: int) -> int | None:
        """A lexicographically least saturated mask with at most k edges, or None."""
        return self._dfs(0, 0, 0, k)

    def _dfs(self, inc: int, exc: int, blocked: int, k: int) -> int | None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _Stop
        rests = self.rests
        while True:
            changed = False
            und = self.full & ~inc & ~exc
            x = und
            while x:
                low = x & -x
                x ^= low
                if self.completes(low.bit_length() - 1, inc):
                    exc |= low
                    blocked |= low
            need_max = 0
            x = exc & ~blocked
            while x:
                low = x & -x
                x ^= low
                e = low.bit_length() - 1
                best_need = None
                only = None
                count = 0
                for r in rests[e]:
                    if r & exc:
                        continue
                    count += 1
                    need = (r & ~inc).bit_count()
                    if best_need is None or need < best_need:
                        best_need = need
                    only = r
                if count == 0:
                    return None
                if best_need == 0:
                    blocked |= low
                    continue
                if count == 1:
                    add = only & ~inc
                    inc |= add
                    if inc.bit_count() > k:
                        return None
                    y = add
                    while y:
                        lb = y & -y
                        y ^= lb
                        if self.completes(lb.bit_length() - 1, inc & ~lb):
                            return None
                    blocked |= low
                    changed = True
                    break
                need_max = max(need_max, best_need)
            if changed:
                continue
            if inc.bit_count() + need_max > k:
                return None
            break
        und = self.full & ~inc & ~exc
        if not und:
            return inc
        low = und & -und
        if inc.bit_count() < k:
            found = self._dfs(inc | low, exc, blocked, k)
            if found is not None:
                return found
        return self._dfs(inc, exc | low, blocked, k)


def saturation_lower_bound(g: Graph, f: Pattern, alpha_budget: int | None = 200_000) -> int:
    """ceil((r-1)(n - α_{r-2}(g)) / 2) when r(F) >= 2 and α is computed exactly, else 0."""
    r = f.r_value
    if r is None or r < 2:
        return 0
    res = max_k_independent(g.rows, r - 2, budget=alpha_budget)
    if not res.exact:
        return 0
    return math.ceil((r - 1) * (g.n - res.size) / 2)


def exact_min_sat(
    g: Graph,
    f: Pattern | Graph | str,
    budget: int | None = None,
    *,
    edge_limit: int = DEFAULT_EDGE_LIMIT,
) -> ExactResult:
    """sat(g, F) by exhaustive branch and bound.

    Candidate sizes are tried in increasing order starting from the
    independence lower bound, so the first saturated subset found is
    optimal; among optimal subsets the lexicographically least edge list is
    returned.  Hosts with more than ``edge_limit`` edges need an explicit
    ``budget`` (search nodes).  When the budget runs out, ``value`` is None
    and the witness is the best greedy completion seen.
    """
    pat = as_pattern(f)
    if g.m > edge_limit and budget is None:
        raise ValueError(
            f"host has {g.m} edges, above the exhaustive limit {edge_limit}; supply a budget"
        )
    edges = g.edge_list()
    index = {e: i for i, e in enumerate(edges)}
    copies = sorted(
        sum(1 << index[e] for e in c) for c in copy_edge_sets(g, pat)
    )
    upper = heuristic_min_sat(g, pat, restarts=8, rng=RngSpec(0), verify=False)
    lb = saturation_lower_bound(g, pat)
    search = _MaskSearch(len(edges), copies, budget)

    def to_graph(mask: int) -> Graph:
        return Graph.from_edges(g.n, (edges[i] for i in range(len(edges)) if mask >> i & 1))

    k = lb
    try:
        while k <= upper.m:
            found = search.solve(k)
            if found is not None:
                return ExactResult(k, to_graph(found), True, k, search.nodes)
            k += 1
    except _Stop:
        return ExactResult(None, upper.graph, False, k, search.nodes)
    raise AssertionError("a greedy completion is saturated, so the search must succeed by its size")
