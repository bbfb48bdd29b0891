from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DIAMOND, PATH3, digraphs, graph_with_terminals
from impsep.digraph import DiGraph, reach_set
from impsep.generators import FIG1_NAMES, gen_fig1, gen_star
from impsep.vertex_flow import (InvalidQuery, closest_witness, cut_value, is_closest,
                                max_vertex_flow, min_vertex_cut)


def brute_cuts(g, a, b, size):
    """All vertex sets of exactly ``size`` whose removal separates a from b."""
    bset = set(b)
    return [y for y in combinations(range(g.n), size)
            if not bset & set(reach_set(g, a, y))]


def brute_mincut(g, a, b):
    for size in range(g.n + 1):
        cuts = brute_cuts(g, a, b, size)
        if cuts:
            return size, cuts


def networkx_value(g, a, b):
    """Max flow on an independently built split graph."""
    h = nx.DiGraph()
    for v in range(g.n):
        h.add_edge(("in", v), ("out", v), capacity=1)
    for u, v in g.arcs:
        if u != v:
            h.add_edge(("out", u), ("in", v))
    for v in a:
        h.add_edge("S", ("in", v))
    for v in b:
        h.add_edge(("out", v), "T")
    return nx.maximum_flow_value(h, "S", "T")


def test_flow_examples():
    res = max_vertex_flow(PATH3, [0], [2])
    assert res.value == 1 and [list(p) for p in res.paths] == [[0, 1, 2]]
    assert max_vertex_flow(DIAMOND, [0], [3]).value == 1
    assert max_vertex_flow(gen_star(4).graph, [0], [1, 2]).value == 1


def test_min_cut_examples():
    assert min_vertex_cut(PATH3, [0], [2], "B") == (2,)
    assert min_vertex_cut(PATH3, [0], [2], "A") == (0,)
    assert min_vertex_cut(DiGraph(3, ((1, 0),)), [0], [2]) == ()


@pytest.mark.parametrize("a,b", [((), (1,)), ((0,), ()), ((0, 1), (1, 2))])
def test_bad_terminals(a, b):
    with pytest.raises(InvalidQuery):
        max_vertex_flow(PATH3, a, b)
    with pytest.raises(InvalidQuery):
        min_vertex_cut(PATH3, a, b)


def test_bad_side():
    with pytest.raises(InvalidQuery):
        min_vertex_cut(PATH3, [0], [2], "C")


@given(graph_with_terminals())
def test_menger_against_brute_force(case):
    g, a, b = case
    res = max_vertex_flow(g, a, b)
    size, cuts = brute_mincut(g, a, b)
    assert res.value == size == networkx_value(g, a, b)
    assert len(res.paths) == res.value
    used = [v for p in res.paths for v in p]
    assert len(used) == len(set(used))
    for p in res.paths:
        assert p[0] in a and p[-1] in b
        assert all((u, v) in set(g.arcs) for u, v in zip(p, p[1:]))
    for side in "AB":
        assert min_vertex_cut(g, a, b, side) in cuts


@given(graph_with_terminals())
def test_extreme_cuts_are_extreme(case):
    g, a, b = case
    size, cuts = brute_mincut(g, a, b)
    near_b = min_vertex_cut(g, a, b, "B")
    near_a = min_vertex_cut(g, a, b, "A")
    reach_b = set(reach_set(g, a, near_b))
    reach_a = set(reach_set(g, a, near_a))
    for y in cuts:
        assert set(reach_set(g, a, y)) <= reach_b | set(near_b)
        assert reach_a <= set(reach_set(g, a, y)) | set(y)


@given(graph_with_terminals(), st.data())
def test_closest_cut_ignores_arc_order(case, data):
    g, a, b = case
    shuffled = DiGraph(g.n, tuple(data.draw(st.permutations(g.arcs))))
    assert min_vertex_cut(g, a, b) == min_vertex_cut(shuffled, a, b)


def test_is_closest_examples():
    fig = gen_fig1()
    assert is_closest(fig.graph, fig.roles["X"], fig.roles["B"])
    assert not is_closest(PATH3, [1], [2])
    assert is_closest(PATH3, [], [2])


def brute_is_closest(g, x, t):
    size, cuts = brute_mincut(g, x, t) if x else (0, [()])
    return size == len(x) and cuts == [tuple(sorted(x))]


@given(digraphs(min_n=2), st.data())
def test_is_closest_matches_definition(g, data):
    x = data.draw(st.sets(st.integers(0, g.n - 1), max_size=3))
    t = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    assert is_closest(g, x, t) == brute_is_closest(g, x, t)


def check_witness(g, x, t, wit):
    assert len(wit.base) == len(x)
    for v in x:
        bundle = wit.bundles[v]
        paths = wit.paths[v]
        if v in t:
            assert bundle == wit.base
            continue
        assert len(bundle) == len(x) + 1 and set(wit.base) < set(bundle) <= set(t)
        assert sorted(p[-1] for p in paths) == list(bundle)
        seen = {}
        for i, p in enumerate(paths):
            assert p[0] in x and p[-1] in t
            assert all((u, w) in set(g.arcs) for u, w in zip(p, p[1:]))
            for u in p:
                if u != v:
                    assert seen.setdefault(u, i) == i
        assert sum(v in p for p in paths) == 2


def test_closest_witness_fig1():
    fig = gen_fig1()
    wit = closest_witness(fig.graph, fig.roles["X"], fig.roles["B"])
    assert len(wit.base) == 3
    assert wit.union() == fig.roles["B"]
    check_witness(fig.graph, fig.roles["X"], fig.roles["B"], wit)
    u1 = FIG1_NAMES["u1"]
    b1, b2 = FIG1_NAMES["b1"], FIG1_NAMES["b2"]
    assert {b1, b2} <= set(wit.bundles[u1])


def test_closest_witness_star():
    star = gen_star(3).graph
    wit = closest_witness(star, [0], [1, 2])
    assert wit.base == (1,) and wit.bundles[0] == (1, 2)
    assert closest_witness(star, [], [1]).union() == ()


def test_closest_witness_rejects_non_closest():
    with pytest.raises(InvalidQuery):
        closest_witness(PATH3, [1], [2])


@given(digraphs(min_n=2), st.data())
def test_closest_witness_paths(g, data):
    x = data.draw(st.sets(st.integers(0, g.n - 1), max_size=3))
    t = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1).filter(lambda s: not s & x))
    if is_closest(g, x, t):
        check_witness(g, x, t, closest_witness(g, x, t))


@given(graph_with_terminals(), st.integers(0, 3))
def test_cut_value_limit(case, limit):
    g, a, b = case
    full = cut_value(g, a, b)
    assert full == max_vertex_flow(g, a, b).value
    assert cut_value(g, a, b, limit=limit) == min(full, limit)
