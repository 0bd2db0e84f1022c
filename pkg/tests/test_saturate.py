import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_sat, brute_saturated, random_graph
from satlab.bounds import anyg_lower, ehm_value, kt_star_value
from satlab.graph import Graph, RngSpec, complete_graph, generate_random
from satlab.pattern import parse_pattern
from satlab.saturate import (
    exact_min_sat,
    greedy_complete,
    heuristic_min_sat,
    verify_saturated,
)

PATTERNS = ["complete:3", "star:3", "kst:2,2", "path:4", "kst:2,3", "star:2"]


def test_star_is_triangle_saturated_in_complete_graph():
    g = complete_graph(6)
    star = [(0, v) for v in range(1, 6)]
    assert verify_saturated(g, star, "complete:3").passed


def test_failures_carry_witnesses():
    g = complete_graph(5)
    v = verify_saturated(g, [(0, 1), (1, 2), (0, 2)], "complete:3")
    assert v.status == "fail" and set(v.witness.values()) == {0, 1, 2}
    v = verify_saturated(g, [], "complete:3")
    assert v.status == "fail" and v.witness == (0, 1)


def test_subgraph_must_lie_in_host():
    with pytest.raises(ValueError):
        verify_saturated(Graph.from_edges(3, [(0, 1)]), [(1, 2)], "star:2")


def test_verification_budget_gives_unknown():
    g = generate_random(40, 0.6, 2)
    v = verify_saturated(g, g, "complete:9", budget=5)
    assert v.status == "unknown"


@pytest.mark.parametrize("policy", ["lex", "rand", "mindeg"])
@pytest.mark.parametrize("spec", PATTERNS)
def test_greedy_is_saturated(policy, spec):
    pat = parse_pattern(spec)
    rng = random.Random(hash((policy, spec)) & 0xFFFF)
    for trial in range(4):
        g = random_graph(rng, rng.randint(5, 9), 0.6)
        res = greedy_complete(g, None, pat, policy, RngSpec(trial))
        assert res.verdict.passed
        assert brute_saturated(g, res.edges, pat.graph)


def test_greedy_keeps_seed_and_rejects_bad_seed():
    g = complete_graph(6)
    res = greedy_complete(g, [(0, 1), (0, 2)], "complete:3")
    assert res.graph.has_edge(0, 1) and res.graph.has_edge(0, 2)
    with pytest.raises(ValueError):
        greedy_complete(g, [(0, 1), (1, 2), (0, 2)], "complete:3")
    with pytest.raises(ValueError):
        greedy_complete(g, None, "complete:3", policy="best")


def test_greedy_is_deterministic():
    g = generate_random(30, 0.5, 9)
    a = greedy_complete(g, None, "kst:2,2", "rand", RngSpec(4))
    b = greedy_complete(g, None, "kst:2,2", "rand", RngSpec(4))
    assert a.graph == b.graph


def test_heuristic_single_restart_is_random_greedy():
    g = generate_random(15, 0.5, 1)
    h = heuristic_min_sat(g, "complete:3", restarts=1, rng=RngSpec(3))
    r = greedy_complete(g, None, "complete:3", "rand", RngSpec(3))
    assert h.graph == r.graph and h.verdict.passed


@pytest.mark.parametrize("spec", ["complete:3", "star:2", "path:4", "kst:2,2", "star:3"])
def test_exact_matches_brute_force(spec):
    pat = parse_pattern(spec)
    rng = random.Random(hash(spec) & 0xFFFF)
    for _ in range(5):
        g = random_graph(rng, rng.randint(4, 6), 0.55)
        if g.m > 11:
            continue
        res = exact_min_sat(g, pat)
        assert res.optimal
        assert res.value == brute_sat(g, pat.graph)
        assert verify_saturated(g, res.witness, pat).passed


@pytest.mark.parametrize("n", range(3, 8))
def test_exact_complete_hosts_match_formulas(n):
    assert exact_min_sat(complete_graph(n), "complete:3").value == ehm_value(n, 3)
    if n >= 4:
        assert exact_min_sat(complete_graph(n), "star:3").value == kt_star_value(n, 3)


def test_exact_witness_is_lex_least():
    res = exact_min_sat(complete_graph(4), "complete:3")
    assert res.witness.edge_list() == [(0, 1), (0, 2), (0, 3)]


def test_exact_needs_budget_above_edge_limit():
    with pytest.raises(ValueError):
        exact_min_sat(complete_graph(8), "complete:3")
    res = exact_min_sat(complete_graph(8), "complete:4", budget=1)
    assert not res.optimal and res.value is None
    assert verify_saturated(complete_graph(8), res.witness, "complete:4").passed


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_exact_below_every_heuristic_and_above_independence_bound(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(4, 7), 0.6)
    if g.m > 14:
        return
    pat = parse_pattern(rng.choice(["complete:3", "star:2", "kst:2,2", "path:4"]))
    exact = exact_min_sat(g, pat).value
    assert exact <= greedy_complete(g, None, pat, "lex").m
    assert exact <= heuristic_min_sat(g, pat, restarts=3, rng=seed).m
    if pat.r_value >= 2:
        low = anyg_lower(g, pat)
        assert low is not None and low <= exact
