import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_alpha_k, random_graph
from satlab.bounds import (
    BoundHypothesisError,
    alpha_concentration_target,
    alpha_k,
    anyg_lower,
    bound_report,
    corollary_lower_value,
    ehm_value,
    kst_lower_constant,
    kst_lower_value,
    kst_remark_constant,
    kt_general_upper,
    kt_star_value,
    random_upper_constant,
    random_upper_value,
    weight_lower_constant,
)
from satlab.graph import Graph, complete_graph, generate_random
from satlab.pattern import parse_pattern

half = Fraction(1, 2)


@pytest.mark.parametrize("n, r, value", [(4, 3, 3), (10, 4, 17), (5, 5, 9), (2, 2, 0)])
def test_ehm(n, r, value):
    assert ehm_value(n, r) == value


@pytest.mark.parametrize("n, t, value", [(4, 3, 3), (5, 2, 2), (8, 3, 7), (3, 2, 1), (6, 4, 7)])
def test_kt_star(n, t, value):
    assert kt_star_value(n, t) == value


@pytest.mark.parametrize("call", [lambda: ehm_value(2, 3), lambda: kt_star_value(3, 3), lambda: ehm_value(5, 1)])
def test_hypotheses_enforced(call):
    with pytest.raises(BoundHypothesisError):
        call()


def test_kt_general():
    assert kt_general_upper(6, parse_pattern("complete:3")) == 5
    f = parse_pattern("kst:2,2")
    assert kt_general_upper(8, f) == Fraction(21, 2)
    lin = kt_general_upper(20, f) - kt_general_upper(10, f)
    assert kt_general_upper(40, f) - kt_general_upper(20, f) == 2 * lin


@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_kt_general_dominates_star_formula(t):
    f = parse_pattern(f"star:{t}")
    for n in range(max(6, t + 1), 31):
        assert kt_general_upper(n, f) >= kt_star_value(n, t)


def test_random_upper():
    assert random_upper_value(1, half, parse_pattern("kst:2,2")) == Fraction(5, 2)
    assert random_upper_value(10, half, parse_pattern("kst:2,5")) == 70
    for t in (1, 2, 3, 6):
        assert random_upper_constant(Fraction(3, 10), parse_pattern(f"star:{t}")) == Fraction(t - 1, 2)
    with pytest.raises(BoundHypothesisError):
        random_upper_constant(half, parse_pattern("complete:3"))


def test_kst_lower():
    assert kst_lower_value(1, half, 2, 2) == Fraction(3, 2)
    assert kst_lower_value(1, half, 2, 5) == 3
    assert kst_lower_value(1, Fraction(1, 10), 2, 5) == 8
    assert kst_remark_constant(half, 2, 4) == Fraction(2)
    with pytest.raises(BoundHypothesisError):
        kst_lower_constant(half, 3, 2)


def test_float_probabilities_become_exact():
    assert kst_lower_constant(0.1, 2, 5) == 8
    assert random_upper_constant(0.5, parse_pattern("kst:2,3")) == 4


@pytest.mark.parametrize("spec, value", [("complete:3", 1), ("star:4", Fraction(3, 2)), ("complete:4", 2)])
def test_weight_constant(spec, value):
    assert weight_lower_constant(parse_pattern(spec)) == value


def test_corollary():
    assert corollary_lower_value(1024, 0.5, parse_pattern("star:3")) == pytest.approx(1004)
    assert corollary_lower_value(1024, 0.5, parse_pattern("star:1")) == 0


def test_alpha_target():
    assert alpha_concentration_target(500, 0.5) == pytest.approx(17.93, abs=0.01)
    assert alpha_concentration_target(100, 0.5, 3) == pytest.approx(13.29, abs=0.01)
    assert alpha_concentration_target(77, 1 - math.exp(-1)) == pytest.approx(2 * math.log(77))


def test_alpha_examples():
    assert alpha_k(complete_graph(7), 0).value == 1
    c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert alpha_k(c5, 0).value == 2
    assert alpha_k(complete_graph(4), 1).value == 2
    assert alpha_k(c5, 2).value == 5


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_alpha_against_enumeration(seed):
    import random

    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 9), rng.choice([0.3, 0.5, 0.8]))
    prev = 0
    for k in range(4):
        res = alpha_k(g, k)
        assert res.exact and res.value == brute_alpha_k(g, k)
        assert res.value >= prev
        prev = res.value
        members = list(res.members)
        assert len(members) == res.value
        assert all(sum(g.has_edge(x, y) for y in members) <= k for x in members)
    assert alpha_k(g, g.max_degree()).value == g.n


def test_alpha_against_networkx_on_gnp():
    g = generate_random(60, 0.5, 4)
    h = nx.complement(nx.from_numpy_array(g.to_numpy().astype(int)))
    clique = max(len(c) for c in nx.find_cliques(h))
    assert alpha_k(g, 0).value == clique


def test_alpha_budget_is_reported():
    res = alpha_k(generate_random(120, 0.5, 0), 0, budget=10)
    assert not res.exact


def test_anyg_lower():
    k3 = parse_pattern("complete:3")
    assert anyg_lower(complete_graph(6), k3) == Fraction(5, 2)
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    assert anyg_lower(c6, k3) == Fraction(3, 2)
    with pytest.raises(BoundHypothesisError):
        anyg_lower(c6, parse_pattern("star:1"))
    assert anyg_lower(generate_random(120, 0.5, 0), k3, budget=10) is None


@given(
    st.integers(2, 4),
    st.integers(0, 4),
    st.fractions(min_value=Fraction(1, 100), max_value=1, max_denominator=100),
)
@settings(max_examples=200, deadline=None)
def test_lower_never_exceeds_upper(s, dt, p):
    t = s + dt
    f = parse_pattern(f"kst:{s},{t}")
    upper = random_upper_constant(p, f)
    assert kst_lower_constant(p, s, t) <= upper
    assert kst_remark_constant(p, s, t) <= upper


@pytest.mark.parametrize("spec", ["kst:2,2", "kst:2,3", "path:4", "cycle:6", "star:3", "starforest:3,2"])
@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
def test_report_ordering(spec, p):
    rep = bound_report(parse_pattern(spec, p), 1000, p)
    uppers = [e for e in rep.entries if e.kind == "upper" and e.host == "random" and e.constant]
    lowers = [e for e in rep.entries if e.kind == "lower" and e.host == "random"]
    for lo, up in itertools.product(lowers, uppers):
        assert float(lo.constant) <= float(up.constant) + 1e-12, (lo.name, up.name)
    assert "random_upper" in {e.name for e in rep.entries}


def test_report_contents():
    rep = bound_report(parse_pattern("complete:4"), 10, 0.5)
    assert rep.get("ehm").value == 17
    assert rep.get("random_upper") is None
    text = rep.to_text()
    assert "ehm" in text and "corollary_lower" in text
    d = rep.to_dict()
    assert d["entries"][0]["name"] == "ehm"
    remark = bound_report(parse_pattern("kst:2,3"), 100, 0.5).get("kst_lower_remark")
    assert remark.note
