"""Result containers: guarantees, witnesses, spanner bookkeeping."""

from __future__ import annotations

import math

import numpy as np
import pytest

import girthkit as gk


def test_guarantee_forms():
    assert str(gk.Guarantee.exact()) == "exact"
    assert str(gk.Guarantee.within(2.25)) == "factor(2.25)"
    assert gk.Guarantee.exact().to_json() == {"kind": "exact"}
    assert gk.Guarantee.within(2.0).to_json() == {"kind": "factor", "factor": 2.0}


def test_walk_weight_triangle(triangle):
    assert gk.walk_weight(triangle, [0, 1, 2]) == 3


def test_walk_weight_weighted(two_cycle_5_7):
    assert gk.walk_weight(two_cycle_5_7, [0, 1]) == 12
    assert gk.walk_weight(two_cycle_5_7, [1, 0]) == 12


def test_walk_weight_rejects_non_walk(triangle):
    with pytest.raises(gk.NotAClosedWalkError):
        gk.walk_weight(triangle, [0, 2])  # (0, 2) is not an edge
    with pytest.raises(gk.NotAClosedWalkError):
        gk.walk_weight(triangle, [])


def test_result_json_acyclic():
    r = gk.GirthResult(estimate=gk.INF, witness=None,
                       guarantee=gk.Guarantee.exact(), algorithm="exact")
    d = r.to_json()
    assert d["estimate"] is None
    assert d["acyclic"] is True
    assert d["witness"] is None
    assert "seed" not in d


def test_result_json_with_seed(triangle):
    r = gk.GirthResult(estimate=3.0, witness=[0, 1, 2],
                       guarantee=gk.Guarantee.within(2.0),
                       algorithm="x", seed=11)
    d = r.to_json()
    assert d["estimate"] == 3
    assert d["seed"] == 11
    assert d["witness"] == [0, 1, 2]


def test_spanner_subgraph_materializes():
    g = gk.directed_gnm(12, 40, weights="uniform", max_weight=5, seed=1)
    ids = np.array(sorted({0, 3, 5, 7}), dtype=np.int64)
    sp = gk.SpannerSubgraph(host=g, edge_ids=ids,
                            provenance={0: "tree_of(2)", 3: "tree_of(2)",
                                        5: "moddijkstra_tree(4,1)",
                                        7: "tree_of(9)"},
                            declared_stretch=8.0, eps=0.25)
    assert sp.edge_count == 4
    h = sp.to_graph()
    assert h.n == g.n
    assert h.m == 4
    tails, heads = g.edge_endpoints()
    for eid in ids.tolist():
        assert h.edge_weight(int(tails[eid]), int(heads[eid])) == \
            int(g.out_weights[eid])


def test_provenance_counts_group_by_kind():
    g = gk.directed_cycle(4)
    sp = gk.SpannerSubgraph(host=g, edge_ids=np.arange(4, dtype=np.int64),
                            provenance={0: "tree_of(1)", 1: "tree_of(2)",
                                        2: "moddijkstra_tree(0,3)",
                                        3: "moddijkstra_tree(2,1)"},
                            declared_stretch=8.0, eps=0.25)
    assert sp.provenance_counts() == {"tree_of": 2, "moddijkstra_tree": 2}
