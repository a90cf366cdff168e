"""Level-set girth estimation, the exponent solver, and the split rule."""

from __future__ import annotations

import math

import numpy as np
import pytest

import girthkit as gk
from girthkit.multilevel import LevelSets, level_dijkstra, level_gate_vector
from girthkit.sampling import DEFAULT_CONFIG, build_samples_general, sample_landmarks
from conftest import assert_sound_witness, dijkstra_dist


# -- exponent solver ---------------------------------------------------------


def test_alpha_one_is_half():
    a = gk.solve_alpha(1)
    assert a.alpha == 0.5
    assert a.residual == 0.0


def test_alpha_two_is_sqrt2_minus_one():
    assert abs(gk.solve_alpha(2).alpha - (math.sqrt(2) - 1)) <= 1e-12


def test_alpha_three_bound():
    assert gk.solve_alpha(3).alpha <= 0.354


def test_alpha_residuals_tiny():
    for k in range(1, 9):
        a = gk.solve_alpha(k)
        assert a.k == k
        assert a.residual <= 1e-12


def test_alpha_strictly_decreasing():
    values = [gk.solve_alpha(k).alpha for k in range(1, 9)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(0.0 < a < 1.0 for a in values)


def test_alpha_rejects_bad_k():
    for k in (0, -2):
        with pytest.raises(gk.InvalidKError):
            gk.solve_alpha(k)


# -- split rule --------------------------------------------------------------


def test_split_polynomial_gap():
    n = 10 ** 6
    alpha = gk.solve_alpha(2).alpha
    assert gk.find_split_level((n ** 0.5, n ** 0.58), n, alpha) == 1


def test_split_equal_sizes():
    # a level that does not grow at all always satisfies the inequality
    alpha = gk.solve_alpha(2).alpha
    assert gk.find_split_level([700, 700], 1000, alpha) == 1


def test_split_matches_direct_scan():
    rng = np.random.default_rng(3)
    alpha = gk.solve_alpha(3).alpha
    n = 1000
    c = 2.0
    for _ in range(200):
        length = int(rng.integers(2, 7))
        sizes = [int(s) for s in rng.integers(1, 10 ** 6, size=length)]
        want = None
        for l in range(1, length):
            bound = c * (sizes[l - 1] * n ** alpha) ** (1.0 / (1.0 + alpha))
            if sizes[l] <= bound:
                want = l
                break
        if want is None:
            with pytest.raises(gk.NoSplitFoundError):
                gk.find_split_level(sizes, n, alpha, c)
        else:
            assert gk.find_split_level(sizes, n, alpha, c) == want


def test_split_needs_two_sizes():
    with pytest.raises(gk.InvalidParametersError):
        gk.find_split_level([5], 10, 0.5)


def test_split_none_found():
    with pytest.raises(gk.NoSplitFoundError):
        gk.find_split_level([1, 100, 10 ** 6], 100, gk.solve_alpha(2).alpha)


# -- level search ------------------------------------------------------------


def test_level_dijkstra_finds_two_cycle(two_cycle_5_7):
    on = np.ones(2, dtype=bool)
    settled, g_u, walk = level_dijkstra(two_cycle_5_7, 0, 1, 0.25, 12.0,
                                        None, on)
    assert 1 in settled.tolist()
    assert g_u == 12.0
    assert gk.walk_weight(two_cycle_5_7, walk) == 12


def test_level_dijkstra_stop_radius():
    # with a vacuous gate the settled set is exactly the stop-radius ball
    g = gk.directed_gnm(50, 250, weights="uniform", max_weight=9, seed=8)
    on = np.ones(50, dtype=bool)
    for u in (0, 17, 33):
        dist = np.asarray(dijkstra_dist(g, u))
        for l in (1, 2):
            g_prime = 6.0
            stop = (2 * l - 1) * g_prime / 2.0
            settled, _, _ = level_dijkstra(g, u, l, 0.25, g_prime, None, on)
            want = np.where(dist <= stop)[0]
            assert np.array_equal(settled, want)


def test_level_dijkstra_respects_off():
    edges = [(0, 1, 1), (1, 2, 1), (2, 0, 1), (1, 0, 5)]
    g = gk.build_graph(edges, n=3, weighted=True)
    on = np.ones(3, dtype=bool)
    _, g_u, walk = level_dijkstra(g, 0, 1, 0.25, 6.0, None, on)
    assert g_u == 3.0
    assert walk == [0, 1, 2]
    on[2] = False
    settled, g_u, walk = level_dijkstra(g, 0, 1, 0.25, 6.0, None, on)
    assert 2 not in settled.tolist()
    assert g_u == 6.0
    assert walk == [0, 1]


def test_level_dijkstra_counts_work():
    g = gk.directed_gnm(40, 160, weights="uniform", max_weight=5, seed=2)
    on = np.ones(40, dtype=bool)
    c = gk.WorkCounters()
    settled, _, _ = level_dijkstra(g, 0, 2, 0.25, 4.0, None, on, c)
    assert c.searches == 1
    assert c.max_levels == 2
    assert c.total_expanded <= settled.shape[0]


def test_mark_off_counts_fresh():
    ls = LevelSets(on=np.ones(5, dtype=bool), estimate=1.0, scale=0, beta=2.0)
    assert ls.mark_off([1, 2]) == 2
    assert ls.mark_off([2, 3]) == 1
    assert int(ls.on.sum()) == 2


def test_gate_vector_vacuous():
    assert level_gate_vector(None, 0, 0.25) is None


def test_gate_vector_matches_reference():
    g = gk.directed_gnm(40, 200, weights="uniform", max_weight=6, seed=12)
    lt = sample_landmarks(g, 6, 5)
    alpha = gk.solve_alpha(2).alpha
    samples = build_samples_general(g, 4, 0.25, 3.5, alpha, lt, 9,
                                    DEFAULT_CONFIG)
    for u in (0, 7, 23):
        want = None
        for j in range(-1, samples.scale + 1):
            verts = samples.vertices(u, j)
            if verts.size == 0:
                continue
            to_rep = np.stack([dijkstra_dist(g, int(y), reverse=True)
                               for y in verts])
            vec = to_rep.max(axis=0) - 1.25 ** (j + 1)
            want = vec if want is None else np.maximum(want, vec)
        got = level_gate_vector(samples, u, 0.25)
        if want is None:
            assert got is None
        else:
            finite = np.isfinite(want)
            assert np.array_equal(finite, np.isfinite(got))
            assert np.allclose(want[finite], got[finite])


# -- driver ------------------------------------------------------------------


def test_driver_triangle(triangle):
    r = gk.girth_approx_2k(triangle, k=2, seed=1)
    assert r.estimate == 3
    assert r.algorithm == "multilevel-2k"
    assert_sound_witness(triangle, r)


def test_driver_k1_delegates():
    g = gk.directed_gnm(60, 300, weights="uniform", max_weight=9, seed=2)
    a = gk.girth_approx_2k(g, k=1, eps=0.25, seed=7)
    b = gk.girth_approx_weighted(g, eps=0.25, seed=7)
    assert a.algorithm == "multilevel-2k"
    assert a.estimate == b.estimate
    assert a.witness == b.witness


def test_driver_rejects_bad_params(two_cycle_5_7):
    with pytest.raises(gk.InvalidKError):
        gk.girth_approx_2k(two_cycle_5_7, k=0)
    for eps in (0.0, -1.0, math.inf):
        with pytest.raises(gk.InvalidParametersError):
            gk.girth_approx_2k(two_cycle_5_7, k=2, eps=eps)


def test_driver_acyclic():
    g = gk.build_graph([(0, 1), (1, 2), (0, 2)], n=3)
    r = gk.girth_approx_2k(g, k=2, seed=5)
    assert math.isinf(r.estimate)
    assert r.witness is None


def test_driver_multi_scc():
    # two disjoint rings plus acyclic tissue, the smaller ring wins
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
             (5, 6), (6, 7), (7, 5),
             (0, 5), (4, 7), (2, 6)]
    g = gk.build_graph(edges, n=8)
    r = gk.girth_approx_2k(g, k=2, seed=9)
    assert r.estimate == 3
    assert_sound_witness(g, r)


def test_driver_within_factor():
    eps = 0.25
    rng = np.random.default_rng(17)
    for k in (2, 3):
        beta = k + k * k * eps + k * eps
        factor = 2.0 * beta * (1.0 + eps) ** 2
        for n in (30, 60):
            for _ in range(3):
                seed = int(rng.integers(2 ** 31))
                g = gk.directed_gnm(n, 5 * n, weights="uniform",
                                    max_weight=8, seed=seed)
                truth = gk.exact_girth(g).estimate
                if math.isinf(truth):
                    continue
                r = gk.girth_approx_2k(g, k=k, eps=eps, seed=seed)
                assert truth <= r.estimate <= factor * truth + 1e-9
                assert_sound_witness(g, r)


def test_driver_unweighted_ring():
    g = gk.directed_cycle(9)
    r = gk.girth_approx_2k(g, k=2, eps=0.25, seed=13)
    factor = 2.0 * 3.5 * 1.25 ** 2
    assert 9 <= r.estimate <= factor * 9
    assert_sound_witness(g, r)


def test_driver_deterministic():
    g = gk.directed_gnm(50, 250, weights="uniform", max_weight=7, seed=20)
    a = gk.girth_approx_2k(g, k=2, seed=8)
    b = gk.girth_approx_2k(g, k=2, seed=8)
    assert a.estimate == b.estimate
    assert a.witness == b.witness


def test_driver_trace_and_counters(tiny_config):
    g = gk.directed_gnm(48, 192, weights="uniform", max_weight=5, seed=21)
    c = gk.WorkCounters()
    trace: list = []
    r = gk.girth_approx_2k(g, k=2, eps=0.25, seed=3, config=tiny_config,
                           counters=c, trace=trace)
    assert trace
    assert c.searches > 0
    assert c.max_levels <= 2
    for entry in trace:
        assert set(entry) == {"depth", "u", "action", "sizes"}
        assert entry["depth"] >= 0
        ok_action = (entry["action"] in ("small-ball", "no-split")
                     or entry["action"].startswith("recurse(l="))
        assert ok_action
        if entry["action"] != "small-ball":
            sizes = entry["sizes"]
            assert all(a <= b for a, b in zip(sizes, sizes[1:]))
    assert_sound_witness(g, r)


def test_driver_heavy_shortcut_ring(tiny_config):
    # one heavy edge on a ring: every distinct roundtrip equals the full
    # ring weight, so the landmark stage already pins the answer
    n = 30
    edges = [(i, (i + 1) % n, 100 if i == 0 else 1) for i in range(n)]
    g = gk.build_graph(edges, n=n, weighted=True)
    trace: list = []
    r = gk.girth_approx_2k(g, k=2, eps=0.25, seed=2, config=tiny_config,
                           trace=trace)
    assert r.estimate == 100 + (n - 1)
    assert_sound_witness(g, r)
    assert trace


def test_driver_recurse_branch(tiny_config):
    # a hub with cheap out-spokes and expensive returns: the hub's first
    # level set is the whole graph, so the split recursion is taken
    spokes = 12
    edges = []
    for s in range(1, spokes + 1):
        edges.append((0, s, 1))
        edges.append((s, 0, 20))
    g = gk.build_graph(edges, n=spokes + 1, weighted=True)
    trace: list = []
    r = gk.girth_approx_2k(g, k=2, eps=0.25, seed=4, config=tiny_config,
                           trace=trace)
    assert r.estimate == 21
    assert_sound_witness(g, r)
    actions = [e["action"] for e in trace]
    assert any(a.startswith("recurse(l=") for a in actions)


def test_driver_no_split_branch(tiny_config):
    # near spokes inside the level-1 radius plus a large shell of far
    # spokes inside level 2: the second level blows past the split bound
    edges = []
    n = 37
    for a in range(1, 5):
        edges.append((0, a, 1))
        edges.append((a, 0, 20))
    for b in range(5, n):
        edges.append((0, b, 3))
        edges.append((b, 0, 20))
    g = gk.build_graph(edges, n=n, weighted=True)
    trace: list = []
    r = gk.girth_approx_2k(g, k=2, eps=0.25, seed=4, config=tiny_config,
                           trace=trace)
    assert r.estimate == 21
    assert_sound_witness(g, r)
    actions = [e["action"] for e in trace]
    assert "no-split" in actions


# -- strongly polynomial variant ---------------------------------------------


def test_strongpoly_k2_within_factor():
    eps = 0.25
    g = gk.directed_gnm(60, 300, weights="uniform", max_weight=10 ** 5, seed=6)
    r = gk.girth_approx_strongpoly(g, k=2, eps=eps, seed=4)
    truth = gk.exact_girth(g).estimate
    beta = 2 + 4 * eps + 2 * eps
    factor = 2.0 * beta * (1.0 + eps) ** 2 + eps
    assert truth <= r.estimate <= factor * truth + 1e-9
    assert r.algorithm == "strong-poly"
    assert_sound_witness(g, r)


def test_strongpoly_acyclic_k2():
    g = gk.build_graph([(0, 1), (1, 2)], n=3)
    r = gk.girth_approx_strongpoly(g, k=2, seed=1)
    assert math.isinf(r.estimate)
    assert r.witness is None
