"""Exact maximum k-independent sets by branch and bound.

A vertex set is k-independent when the subgraph it induces has maximum
degree at most k.  The search branches on vertices in reverse order of a
greedy clique cover of the candidate set; a clique of the host meets a
k-independent set in at most ``k + 1`` vertices, which gives the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import iter_bits


@dataclass(frozen=True)
class IndependenceResult:
    size: int
    members: int  # bitmask
    exact: bool
    nodes: int


class _Budget(Exception):
    pass


def _clique_cover(rows: Sequence[int], cand: int, cap: int) -> tuple[list[int], list[int]]:
    """Greedy cover of ``cand`` by cliques.

    Returns vertices in cover order and, aligned with it, the running bound
    ``sum(min(|Q|, cap))`` over the cliques seen so far.
    """
    order: list[int] = []
    bounds: list[int] = []
    total = 0
    rest = cand
    while rest:
        q = rest
        members = []
        while q:
            low = q & -q
            v = low.bit_length() - 1
            members.append(v)
            q &= rows[v]
        rest &= ~sum(1 << v for v in members)
        size = len(members)
        for i, v in enumerate(members):
            order.append(v)
            bounds.append(total + min(i + 1, cap))
        total += min(size, cap)
    return order, bounds


def max_k_independent(
    rows: Sequence[int],
    k: int = 0,
    *,
    candidates: int | None = None,
    budget: int | None = None,
    initial: int = 0,
) -> IndependenceResult:
    """Largest k-independent subset of ``candidates`` (default: all vertices).

    ``initial`` is a known k-independent mask used as the starting incumbent.
    With a node ``budget`` the search may stop early; ``exact`` is then False
    and ``size`` is only a lower bound on the optimum.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = len(rows)
    cand0 = (1 << n) - 1 if candidates is None else candidates
    best = [initial.bit_count(), initial]
    nodes = [0]
    cap = k + 1

    def expand(chosen: int, size: int, cand: int, sdeg: dict[int, int]) -> None:
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise _Budget
        if size > best[0]:
            best[0], best[1] = size, chosen
        if not cand:
            return
        order, bounds = _clique_cover(rows, cand, cap)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best[0]:
                return
            v = order[i]
            cand &= ~(1 << v)
            if k == 0:
                expand(chosen | 1 << v, size + 1, cand & ~rows[v], sdeg)
                continue
            nv = rows[v]
            new_deg = dict(sdeg)
            new_deg[v] = (nv & chosen).bit_count()
            for u in iter_bits(nv & chosen):
                new_deg[u] += 1
            new_chosen = chosen | 1 << v
            blocked = 0
            for u, d in new_deg.items():
                if d >= k:
                    blocked |= rows[u]
            nxt = cand & ~blocked
            # drop candidates that already see k+1 chosen vertices
            if nxt:
                keep = 0
                for w in iter_bits(nxt):
                    if (rows[w] & new_chosen).bit_count() <= k:
                        keep |= 1 << w
                nxt = keep
            expand(new_chosen, size + 1, nxt, new_deg)

    try:
        expand(0, 0, cand0, {})
        exact = True
    except _Budget:
        exact = False
    return IndependenceResult(best[0], best[1], exact, nodes[0])


def greedy_independent(rows: Sequence[int], order: Sequence[int]) -> int:
    """Independent set built by scanning ``order`` and keeping compatible vertices."""
    chosen = 0
    banned = 0
    for v in order:
        if not banned >> v & 1:
            chosen |= 1 << v
            banned |= rows[v] | 1 << v
    return chosen
