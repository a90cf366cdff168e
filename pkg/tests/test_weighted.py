"""The 2+eps estimator, roundtrip spanners, and weight rescaling."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import girthkit as gk
from girthkit.weighted import pruned_dijkstra_cycle
from conftest import assert_sound_witness, dijkstra_dist


# -- band arithmetic ---------------------------------------------------------


def test_band_index_basics():
    assert gk.band_index(0.0, 0.25) == -1
    assert gk.band_index(1.0, 0.25) == 0
    assert gk.band_index(1.25, 0.25) == 1
    with pytest.raises(ValueError):
        gk.band_index(-1.0, 0.25)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 1e9), st.sampled_from([0.1, 0.25, 1.0]))
def test_band_index_brackets(d, eps):
    j = gk.band_index(d, eps)
    assert (1 + eps) ** j <= d * (1 + 1e-12)
    assert d < (1 + eps) ** (j + 1) * (1 + 1e-12)


# -- pruned search -----------------------------------------------------------


def test_pruned_search_two_cycle(two_cycle_5_7):
    eps = 0.25
    i = gk.band_index(12.0, eps)
    best, walk, _ = pruned_dijkstra_cycle(two_cycle_5_7, 0, i, eps, None)
    assert best == 12
    assert gk.walk_weight(two_cycle_5_7, walk) == 12


def test_pruned_search_scale_too_small(two_cycle_5_7):
    # stop bound below the first hop weight, so the search never leaves u
    eps = 0.25
    i = gk.band_index(5.0, eps) - 1
    assert (1 + eps) ** (i + 1) < 5
    best, walk, _ = pruned_dijkstra_cycle(two_cycle_5_7, 0, i, eps, None)
    assert math.isinf(best)
    assert walk is None


def test_pruned_search_stop_bound():
    g = gk.directed_gnm(60, 360, weights="uniform", max_weight=9, seed=4)
    eps = 0.25
    for u in range(0, 60, 11):
        for i in (2, 4, 6):
            c = gk.WorkCounters()
            pruned_dijkstra_cycle(g, u, i, eps, None, counters=c)
            # nothing past the stop radius is expanded, so the count is
            # bounded by the vertices within it
            d = dijkstra_dist(g, u)
            within = sum(1 for x in d if x <= (1 + eps) ** (i + 1))
            assert c.total_expanded <= within


def test_pruned_search_never_underestimates():
    eps = 0.25
    for seed in range(8):
        g = gk.directed_gnm(60, 300, weights="uniform", max_weight=6,
                            seed=40 + seed)
        rt = gk.exact_roundtrip(g).roundtrip_matrix()
        for u in range(0, g.n, 13):
            truth_u = math.inf
            heads, weights = g.out_edges(u)
            d_from_u = dijkstra_dist(g, u)
            in_tails, in_weights = g.in_edges(u)
            for v, w in zip(in_tails.tolist(), in_weights.tolist()):
                truth_u = min(truth_u, d_from_u[v] + w)
            i = 8
            best, walk, _ = pruned_dijkstra_cycle(g, u, i, eps, None)
            assert best >= truth_u or math.isinf(best)
            if walk is not None:
                assert gk.walk_weight(g, walk) == best


def test_pruned_search_collect_tree():
    g = gk.directed_gnm(30, 150, weights="uniform", max_weight=4, seed=6)
    _, _, tree = pruned_dijkstra_cycle(g, 0, 6, 0.25, None, collect_tree=True)
    for t, h in tree:
        assert g.edge_weight(t, h) is not None


# -- driver ------------------------------------------------------------------


def test_weighted_two_cycle_exact(two_cycle_5_7):
    r = gk.girth_approx_weighted(two_cycle_5_7, eps=0.1, seed=3)
    assert r.estimate == 12
    assert r.guarantee.factor == pytest.approx(2.1)
    assert_sound_witness(two_cycle_5_7, r)


def test_weighted_unit_cycle_contract():
    g = gk.directed_cycle(6)
    r = gk.girth_approx_weighted(g, eps=0.25, seed=4)
    assert 6 <= r.estimate <= 13.5
    assert_sound_witness(g, r)


def test_weighted_dag():
    g = gk.build_graph([(0, 1, 3), (1, 2, 4)], n=3, weighted=True)
    r = gk.girth_approx_weighted(g, eps=0.25, seed=1)
    assert r.is_acyclic
    assert r.guarantee.kind == "exact"


def test_weighted_bad_eps(two_cycle_5_7):
    for eps in (0.0, -1.0, math.inf):
        with pytest.raises(gk.InvalidEpsilonError):
            gk.girth_approx_weighted(two_cycle_5_7, eps=eps, seed=1)


def test_weighted_random_instances_within_factor():
    for seed in range(12):
        n = (50, 100, 150)[seed % 3]
        g = gk.directed_gnm(n, 4 * n, weights="uniform", max_weight=50,
                            seed=300 + seed)
        truth = gk.exact_girth(g).estimate
        r = gk.girth_approx_weighted(g, eps=0.25, seed=seed)
        assert truth <= r.estimate <= 2.25 * truth
        assert_sound_witness(g, r)
        assert r.guarantee.factor == 2.25


def test_weighted_deterministic():
    g = gk.directed_gnm(90, 450, weights="uniform", max_weight=20, seed=12)
    a = gk.girth_approx_weighted(g, eps=0.25, seed=5)
    b = gk.girth_approx_weighted(g, eps=0.25, seed=5)
    assert a.estimate == b.estimate
    assert a.witness == b.witness


def test_weighted_shrunk_config_still_sound(tiny_config):
    for seed in range(6):
        g = gk.directed_gnm(80, 400, weights="uniform", max_weight=10,
                            seed=500 + seed)
        truth = gk.exact_girth(g).estimate
        c = gk.WorkCounters()
        r = gk.girth_approx_weighted(g, eps=0.25, seed=seed,
                                     config=tiny_config, counters=c)
        assert truth <= r.estimate <= 2.25 * truth
        assert_sound_witness(g, r)


# -- spanner -----------------------------------------------------------------


def test_spanner_identity_when_sparse():
    g = gk.build_graph([(0, 1, 2), (1, 0, 3)], n=2, weighted=True)
    sp = gk.build_roundtrip_spanner(g, eps=0.25, seed=1)
    chk = gk.verify_spanner(g, sp, 1.0)
    assert chk.ok  # both edges kept, distances intact


def test_spanner_grid_verifies_at_declared_stretch():
    g = gk.bidirected_grid(5, 5)
    sp = gk.build_roundtrip_spanner(g, eps=0.25, seed=7)
    assert sp.declared_stretch == pytest.approx(5 + 12 * 0.25)
    chk = gk.verify_spanner(g, sp, sp.declared_stretch)
    assert chk.ok


def test_spanner_subgraph_and_provenance():
    g = gk.directed_gnm(80, 800, weights="uniform", max_weight=9, seed=21)
    sp = gk.build_roundtrip_spanner(g, eps=0.25, seed=3)
    assert sp.edge_count <= g.m
    assert set(sp.provenance) == set(sp.edge_ids.tolist())
    assert gk.verify_spanner(g, sp, sp.declared_stretch).ok
    for tag in sp.provenance.values():
        assert tag.startswith(("tree_of(", "moddijkstra_tree("))


def test_spanner_sparsifies_dense_hosts():
    g = gk.directed_gnm(60, 2000, weights="uniform", max_weight=5, seed=9)
    sp = gk.build_roundtrip_spanner(g, eps=0.5, seed=2)
    assert sp.edge_count < g.m
    assert gk.verify_spanner(g, sp, sp.declared_stretch).ok


def test_spanner_pruned_searches_engage():
    # starving the landmark budget leaves uncovered vertices, which must be
    # served by their own pruned searches
    starved = gk.SamplingConfig(landmark_scale=0.05, pick_scale=1.0,
                                rounds_scale=1.0, highgirth_scale=1.0,
                                exact_base=4)
    g = gk.directed_gnm(70, 560, weights="uniform", max_weight=7, seed=30)
    sp = gk.build_roundtrip_spanner(g, eps=0.25, seed=11, config=starved)
    counts = sp.provenance_counts()
    assert counts.get("moddijkstra_tree", 0) > 0
    assert gk.verify_spanner(g, sp, sp.declared_stretch).ok


def test_spanner_deterministic():
    g = gk.directed_gnm(50, 500, weights="uniform", max_weight=8, seed=14)
    a = gk.build_roundtrip_spanner(g, eps=0.25, seed=6)
    b = gk.build_roundtrip_spanner(g, eps=0.25, seed=6)
    assert np.array_equal(a.edge_ids, b.edge_ids)
    assert a.provenance == b.provenance


def test_spanner_for_stretch():
    g = gk.bidirected_grid(3, 3)
    sp = gk.spanner_for_stretch(g, 8.0, seed=1)
    assert sp.eps == pytest.approx(0.25)
    with pytest.raises(gk.InvalidEpsilonError):
        gk.spanner_for_stretch(g, 5.0, seed=1)
    with pytest.raises(gk.InvalidEpsilonError):
        gk.spanner_for_stretch(g, 4.0, seed=1)


# -- rescaling ---------------------------------------------------------------


def test_threshold_triangle():
    g = gk.build_graph([(0, 1, 1), (1, 2, 2), (2, 0, 3)], n=3, weighted=True)
    assert gk.cycle_weight_threshold(g) == 3


def test_threshold_two_cycles():
    edges = [(0, 1, 5), (1, 0, 4), (2, 3, 9), (3, 2, 1)]
    g = gk.build_graph(edges, n=4, weighted=True)
    assert gk.cycle_weight_threshold(g) == 5


def test_threshold_matches_linear_scan():
    for seed in range(6):
        g = gk.directed_gnm(30, 200, weights="uniform", max_weight=30,
                            seed=60 + seed)
        got = gk.cycle_weight_threshold(g)
        lo = None
        for w in sorted(set(g.out_weights.tolist())):
            tails, heads = g.edge_endpoints()
            keep = g.out_weights <= w
            sub = gk.from_arrays(g.n, tails[keep], heads[keep],
                                 g.out_weights[keep], True)
            if any(len(c) > 1 for c in gk.scc(sub).components):
                lo = w
                break
        assert got == lo


def test_threshold_acyclic_raises():
    g = gk.build_graph([(0, 1, 2)], n=2, weighted=True)
    with pytest.raises(gk.AcyclicGraphError):
        gk.cycle_weight_threshold(g)


def test_rescale_unit_graph():
    g = gk.directed_cycle(8)
    si = gk.rescale_for_strong_polytime(g, eps=0.25)
    assert si.threshold == 1
    assert si.unit == pytest.approx(0.25 / 8)
    w = si.graph.out_weights
    assert (w[~si.graph.aux_edges] == 32).all() if si.graph.aux_edges is not None \
        else (w == 32).all()
    assert si.discarded_count == 0


def test_rescale_threshold_from_cycle_bottleneck():
    edges = [(0, 1, 9), (1, 0, 1), (2, 3, 1), (3, 4, 1), (4, 2, 1)]
    g = gk.build_graph(edges, n=5, weighted=True)
    # cheapest cycle-completing threshold is 1 (the 3-cycle), not 9
    assert gk.cycle_weight_threshold(g) == 1
    g2 = gk.build_graph(edges[:2], n=2, weighted=True)
    si = gk.rescale_for_strong_polytime(g2, eps=0.5)
    assert si.threshold == 9


def test_rescale_discards_heavy_edges():
    edges = [(0, 1, 1), (1, 0, 1), (0, 2, 10 ** 9), (2, 0, 1)]
    g = gk.build_graph(edges, n=3, weighted=True)
    si = gk.rescale_for_strong_polytime(g, eps=0.25, k=1)
    assert si.discarded_count == 1
    kept = [tuple(map(int, e)) for e in zip(*si.graph.edge_endpoints())]
    assert (0, 2) not in kept
    for new_eid, old_eid in enumerate(si.edge_map.tolist()):
        t_old, h_old = (int(a[old_eid]) for a in g.edge_endpoints())
        t_new, h_new = (int(a[new_eid]) for a in si.graph.edge_endpoints())
        assert (t_old, h_old) == (t_new, h_new)


def test_rescale_rejects_bad_k(two_cycle_5_7):
    with pytest.raises(gk.InvalidKError):
        gk.rescale_for_strong_polytime(two_cycle_5_7, eps=0.25, k=0)


def test_strongpoly_huge_weights():
    for seed in range(4):
        g = gk.directed_gnm(40, 240, weights="uniform", max_weight=10 ** 6,
                            seed=70 + seed)
        truth = gk.exact_girth(g).estimate
        r = gk.girth_approx_strongpoly(g, k=1, eps=0.25, seed=seed)
        assert truth <= r.estimate <= (2 + 2 * 0.25) * truth
        assert_sound_witness(g, r)
        assert r.guarantee.factor == pytest.approx(2.5)


def test_strongpoly_acyclic():
    g = gk.build_graph([(0, 1, 5)], n=2, weighted=True)
    r = gk.girth_approx_strongpoly(g, seed=1)
    assert r.is_acyclic
