import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satlab.graph import Graph
from satlab.pattern import (
    PatternError,
    PatternSyntaxError,
    analyze,
    analyze_bipartition,
    max_independent_set,
    parse_pattern,
    r_value,
    layered_upper_constant,
    w_value,
)


@st.composite
def small_graphs(draw, min_n=1, max_n=8, min_edges=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=min(min_edges, len(pairs)))) if pairs else []
    return Graph.from_edges(n, chosen)


@pytest.mark.parametrize(
    "spec, n, m",
    [
        ("complete:4", 4, 6),
        ("kst:2,3", 5, 6),
        ("kst:3,2", 5, 6),
        ("star:3", 4, 3),
        ("starforest:1,2", 5, 3),
        ("cycle:5", 5, 5),
        ("path:4", 4, 3),
        ("g6:C~", 4, 6),
        ("edges:0-1,1-2", 3, 2),
        ("edges:5;0-1", 5, 1),
    ],
)
def test_grammar(spec, n, m):
    pat = parse_pattern(spec)
    assert (pat.order, pat.size) == (n, m)


def test_kst_sides_are_normalised():
    assert parse_pattern("kst:3,2").kst == (2, 3)
    assert parse_pattern("starforest:1,3").star_degrees == (3, 1)


@pytest.mark.parametrize(
    "spec, pos",
    [("kst:2,x", 6), ("bogus:3", 0), ("edges:0-1,2", 10), ("complete", 0)],
)
def test_syntax_errors_carry_position(spec, pos):
    with pytest.raises(PatternSyntaxError) as info:
        parse_pattern(spec)
    assert info.value.position == pos


@pytest.mark.parametrize("spec", ["cycle:2", "edges:0-0", "edges:0-1,1-0", "edges:1;0-1", "complete:0"])
def test_semantic_errors(spec):
    with pytest.raises(PatternError):
        parse_pattern(spec)


@pytest.mark.parametrize(
    "spec, r, w",
    [("complete:3", 2, 3), ("star:4", 4, 4), ("complete:4", 3, 5), ("kst:2,2", 2, 2), ("path:4", 2, 2)],
)
def test_r_and_w(spec, r, w):
    pat = parse_pattern(spec)
    assert (pat.r_value, pat.w_value) == (r, w)


@given(small_graphs(min_edges=1))
@settings(max_examples=80, deadline=None)
def test_r_w_against_definition(f):
    if f.m == 0:
        return
    deg = [sum(f.has_edge(x, y) for y in range(f.n)) for x in range(f.n)]
    pairs = [(x, y) for x in range(f.n) for y in range(x + 1, f.n) if f.has_edge(x, y)]
    r = min(max(deg[x], deg[y]) for x, y in pairs)
    w = min(max(deg[x], deg[y]) + sum(f.has_edge(x, z) and f.has_edge(y, z) for z in range(f.n)) for x, y in pairs)
    assert r_value(f) == r and w_value(f) == w
    assert Fraction(w - 1, 2) >= Fraction(r - 1, 2)


@given(small_graphs())
@settings(max_examples=80, deadline=None)
def test_max_independent_set_is_maximum(f):
    s = max_independent_set(f)
    assert all(not f.has_edge(x, y) for x, y in itertools.combinations(s, 2))
    best = max(
        k for k in range(f.n + 1)
        for sub in itertools.combinations(range(f.n), k)
        if all(not f.has_edge(x, y) for x, y in itertools.combinations(sub, 2))
    )
    assert len(s) == best


@pytest.mark.parametrize(
    "spec, b, d",
    [("complete:3", 1, 1), ("kst:2,2", 1, 2), ("star:3", 0, 3), ("complete:4", 2, 1)],
)
def test_independence_parameters(spec, b, d):
    pat = parse_pattern(spec)
    assert (pat.kt_b, pat.kt_d) == (b, d)


@pytest.mark.parametrize(
    "spec, a, delta",
    [("kst:2,2", 2, 2), ("kst:2,3", 2, 3), ("path:4", 2, 1), ("star:3", 1, 3), ("cycle:6", 3, 2)],
)
def test_bipartition_parameters(spec, a, delta):
    pat = parse_pattern(spec)
    assert (pat.a, pat.delta) == (a, delta)
    for A, B in pat.bipartitions:
        assert len(A) <= len(B)


def test_tied_orientation_minimises_constant():
    # both sides have 3 vertices; side {0,1,2} has degrees 2,2,2 and side {3,4,5} has 1,2,3
    f = parse_pattern("edges:0-3,0-5,1-4,1-5,2-4,2-5").graph
    for p in (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)):
        ba = analyze_bipartition(f, p)
        assert (ba.a, ba.delta) == (3, 1)
        assert ba.bipartitions[0][0].sorted() == [3, 4, 5]


def test_non_bipartite_reports_cycle():
    with pytest.raises(PatternError, match="odd cycle"):
        analyze_bipartition(parse_pattern("complete:3").graph)
    pat = parse_pattern("cycle:5")
    assert not pat.bipartite and len(pat.odd_cycle) % 2 == 1


def test_isolated_vertices_rejected_by_bipartition():
    f = parse_pattern("edges:3;0-1").graph
    with pytest.raises(PatternError, match="isolated"):
        analyze_bipartition(f)
    assert parse_pattern("edges:3;0-1").has_isolated


@pytest.mark.parametrize(
    "a, delta, p, value",
    [(2, 2, Fraction(1, 2), Fraction(5, 2)), (2, 3, Fraction(1, 2), Fraction(4)), (2, 5, Fraction(1, 2), Fraction(7))],
)
def test_layered_upper_constant(a, delta, p, value):
    assert layered_upper_constant(a, delta, p) == value


def test_shape_detection():
    assert parse_pattern("complete:2").star_degrees == (1,)
    assert parse_pattern("cycle:4").kst == (2, 2)
    assert parse_pattern("path:4").kst is None
    assert parse_pattern("complete:3").is_clique
    assert analyze(Graph.from_edges(3, [(0, 1), (0, 2)])).is_star
