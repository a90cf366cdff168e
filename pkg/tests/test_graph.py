"""Graph construction, components, generators, and file round-trips."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import girthkit as gk
from conftest import edge_list


def test_triangle_build(triangle):
    assert triangle.n == 3
    assert triangle.m == 3
    assert not triangle.weighted
    heads, weights = triangle.out_edges(0)
    assert heads.tolist() == [1]
    assert weights.tolist() == [1]


def test_self_loop_rejected():
    with pytest.raises(gk.SelfLoopError):
        gk.build_graph([(0, 0, 1)], n=1)


def test_duplicate_edge_rejected():
    with pytest.raises(gk.DuplicateEdgeError):
        gk.build_graph([(0, 1, 1), (0, 1, 2)], n=2)


def test_nonpositive_weight_rejected():
    with pytest.raises(gk.NonPositiveWeightError):
        gk.build_graph([(0, 1, 0)], n=2, weighted=True)
    with pytest.raises(gk.NonPositiveWeightError):
        gk.build_graph([(0, 1, -3)], n=2, weighted=True)


def test_vertex_out_of_range_rejected():
    with pytest.raises(gk.VertexOutOfRangeError):
        gk.build_graph([(0, 5, 1)], n=3)


def test_two_cycle_weight(two_cycle_5_7):
    g = two_cycle_5_7
    assert g.edge_weight(0, 1) == 5
    assert g.edge_weight(1, 0) == 7
    assert g.edge_weight(0, 0) is None


def test_out_edges_sorted_by_head():
    g = gk.build_graph([(0, 3, 1), (0, 1, 1), (0, 2, 1)], n=4)
    heads, _ = g.out_edges(0)
    assert heads.tolist() == [1, 2, 3]


def test_edge_id_round_trip():
    g = gk.directed_gnm(30, 120, seed=2)
    tails, heads = g.edge_endpoints()
    for eid in range(g.m):
        assert g.edge_id(int(tails[eid]), int(heads[eid])) == eid
    assert g.edge_id(0, 0) is None


def test_reverse_is_transpose():
    g = gk.directed_gnm(25, 100, weights="uniform", max_weight=9, seed=3)
    r = g.reverse()
    fwd = set(edge_list(g))
    bwd = {(v, u, w) for u, v, w in edge_list(r)}
    assert fwd == bwd
    assert r.reverse().same_as(g)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_scc_matches_mutual_reachability(data):
    n = data.draw(st.integers(2, 8))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    picks = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=20))
    g = gk.build_graph([(u, v, 1) for u, v in picks], n=n)

    reach = [[False] * n for _ in range(n)]
    for v in range(n):
        reach[v][v] = True
    for u, v in picks:
        reach[u][v] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True

    d = gk.scc(g)
    for u in range(n):
        for v in range(n):
            same = d.component_of[u] == d.component_of[v]
            assert same == (reach[u][v] and reach[v][u])


def test_scc_counts(triangle):
    assert len(gk.scc(triangle).components) == 1
    path = gk.build_graph([(0, 1, 1), (1, 2, 1)], n=3)
    assert len(gk.scc(path).components) == 3
    pair = gk.build_graph([(0, 1, 1), (1, 0, 1), (2, 3, 1), (3, 2, 1)], n=4)
    d = gk.scc(pair)
    assert sorted(len(c) for c in d.components) == [2, 2]


def test_induced_subgraph():
    g = gk.directed_gnm(20, 80, seed=4)
    sub, old = gk.induced_subgraph(g, [3, 7, 11, 15])
    assert sub.n == 4
    have = set(edge_list(g))
    for t, h, w in edge_list(sub):
        assert (int(old[t]), int(old[h]), w) in have
    kept = {(u, v) for u, v, _ in have
            if u in {3, 7, 11, 15} and v in {3, 7, 11, 15}}
    assert sub.m == len(kept)


def test_induced_subgraph_range_check():
    g = gk.directed_cycle(5)
    with pytest.raises(gk.VertexOutOfRangeError):
        gk.induced_subgraph(g, [0, 9])


def test_gnm_counts():
    g = gk.directed_gnm(100, 400, seed=1)
    assert g.n == 100
    assert g.m == 400
    tails, heads = g.edge_endpoints()
    assert (tails != heads).all()
    assert len(set(zip(tails.tolist(), heads.tolist()))) == 400


def test_gnm_rejects_impossible_m():
    with pytest.raises(gk.InvalidParametersError):
        gk.directed_gnm(3, 7, seed=0)


def test_cycle_generator():
    g = gk.directed_cycle(5)
    assert gk.exact_girth(g).estimate == 5


def test_layered_cycle_divisible():
    g = gk.layered_cycle(24, 4, seed=0)
    girth = gk.exact_girth(g).estimate
    assert girth % 4 == 0
    with pytest.raises(gk.InvalidParametersError):
        gk.layered_cycle(10, 3)  # 3 does not divide 10


def test_grid_has_back_and_forth():
    g = gk.bidirected_grid(3, 4)
    assert g.n == 12
    assert gk.exact_girth(g).estimate == 2


def test_generate_dispatch():
    g = gk.generate("cycle", n=6)
    assert g.n == 6
    with pytest.raises(gk.InvalidParametersError):
        gk.generate("nope", n=3)


def test_weight_model_validation():
    with pytest.raises(gk.InvalidParametersError):
        gk.directed_gnm(10, 20, weights="uniform", seed=0)  # missing max


def test_read_text_triangle(tmp_path):
    p = tmp_path / "t.graph"
    p.write_text("p 3 3 w\ne 0 1 1\ne 1 2 1\ne 2 0 1\n")
    g = gk.read_graph(p)
    assert g.n == 3 and g.m == 3 and g.weighted
    assert g.edge_weight(2, 0) == 1


def test_read_skips_comments(tmp_path):
    p = tmp_path / "t.graph"
    p.write_text("c hello\np 2 1 u\nc mid\ne 0 1\n")
    g = gk.read_graph(p)
    assert g.m == 1


def test_malformed_edge_line(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("p 2 1 u\ne 0\n")
    with pytest.raises(gk.ParseError) as exc:
        gk.read_graph(p)
    assert "2" in str(exc.value)  # the offending line number


def test_write_read_round_trip(tmp_path):
    for seed in range(4):
        g = gk.directed_gnm(40, 160, weights="uniform", max_weight=12,
                            seed=seed)
        p = tmp_path / f"g{seed}.graph"
        gk.write_graph(g, p)
        assert gk.read_graph(p).same_as(g)


def test_write_is_canonical(tmp_path):
    g = gk.directed_gnm(15, 60, seed=8)
    a, b = tmp_path / "a.graph", tmp_path / "b.graph"
    gk.write_graph(g, a)
    gk.write_graph(gk.read_graph(a), b)
    assert a.read_bytes() == b.read_bytes()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_round_trip_random(tmp_path_factory, data):
    n = data.draw(st.integers(1, 10))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    picks = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=30)
                      ) if pairs else []
    weighted = data.draw(st.booleans())
    edges = [(u, v, data.draw(st.integers(1, 50)) if weighted else 1)
             for u, v in picks]
    g = gk.build_graph(edges, n=n, weighted=weighted)
    p = tmp_path_factory.mktemp("rt") / "g.graph"
    gk.write_graph(g, p)
    assert gk.read_graph(p).same_as(g)


def test_max_weight_property():
    g = gk.directed_gnm(20, 60, weights="uniform", max_weight=17, seed=5)
    assert 1 <= g.max_weight <= 17
    tails, heads = g.edge_endpoints()
    assert g.max_weight == int(g.out_weights.max())
