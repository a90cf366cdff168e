"""The (2k+eps) girth approximation family with its exponent solver.

One parameter k trades accuracy for speed: level sets S^1 subset ... S^k
around each vertex grow by geometric search radii, and the exponent
alpha_k, the unique positive root of a(1+a)^{k-1} = 1-a, balances the
level sizes so that either the first level is already small enough to
solve exactly, or some consecutive pair of levels barely grows and the
problem recurses on the smaller one. Processed vertices are marked off
and never searched again.

k=1 coincides with the flat weighted driver and is delegated to it.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidKError, InvalidParametersError, NoSplitFoundError
from .graph import DirectedGraph, induced_subgraph, scc
from .oracle import exact_girth
from .results import INF, GirthResult, Guarantee
from .rng import fresh_seed, stream
from .sampling import (DEFAULT_CONFIG, LandmarkTable, SampleSets,
                       SamplingConfig, WorkCounters, build_samples_general,
                       sample_landmarks)
from .weighted import band_index, girth_approx_weighted

ALGORITHM = "multilevel-2k"


@dataclass(frozen=True)
class AlphaExponent:
    """Runtime exponent for level count k."""

    k: int
    alpha: float
    residual: float


def solve_alpha(k: int) -> AlphaExponent:
    """Unique root of a(1+a)^{k-1} = 1-a in (0,1), by bisection.

    f(a) = a(1+a)^{k-1} + a - 1 is strictly increasing on (0,1) with
    f(0) = -1 and f(1) = 2^{k-1} > 0.
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidKError(k)

    def f(a: float) -> float:
        return a * (1.0 + a) ** (k - 1) + a - 1.0

    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        v = f(mid)
        if v == 0.0:
            lo = hi = mid
            break
        if v < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15:
            break
    alpha = 0.5 * (lo + hi)
    residual = abs(alpha * (1.0 + alpha) ** (k - 1) - (1.0 - alpha))
    return AlphaExponent(k=k, alpha=alpha, residual=residual)


def find_split_level(sizes, n: int, alpha: float, c: float = 2.0) -> int:
    """Least l with |S^{l+1}| <= c * (|S^l| * n^alpha)^(1/(1+alpha)).

    ``sizes`` lists |S^1|, ..., |S^k|; the returned l is 1-based and below
    k. When no level satisfies the inequality the high-probability
    guarantee behind it has failed; that is surfaced, not swallowed.
    """
    sizes = list(sizes)
    if len(sizes) < 2:
        raise InvalidParametersError("need at least two level sizes")
    for l in range(1, len(sizes)):
        if sizes[l] <= c * (sizes[l - 1] * n ** alpha) ** (1.0 / (1.0 + alpha)):
            return l
    raise NoSplitFoundError(
        f"no level satisfies the split inequality: sizes={sizes}")


@dataclass
class LevelSets:
    """On/off bookkeeping plus the per-vertex nested frontier sets."""

    on: np.ndarray
    estimate: float              # the working girth scale g'
    scale: int                   # index i with g' = (1+eps)^i
    beta: float
    sets: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)

    def mark_off(self, vertices) -> int:
        vertices = np.asarray(vertices, dtype=np.int64)
        fresh = int(self.on[vertices].sum())
        self.on[vertices] = False
        return fresh


def _floor_pow(d: float, eps: float) -> float:
    return 0.0 if d <= 0.0 else (1.0 + eps) ** band_index(d, eps)


def level_gate_vector(samples: SampleSets | None, u: int,
                      eps: float) -> np.ndarray | None:
    """max over bands j' of (max_{r in R^{j'}(u)} d(x,r) - (1+eps)^{j'+1}).

    The level gate compares this against its per-level slack; None means
    no samples anywhere, a vacuous gate.
    """
    if samples is None:
        return None
    out: np.ndarray | None = None
    table = samples.table
    for j in range(-1, samples.scale + 1):
        rows = samples.rows(u, j)
        if rows.size == 0:
            continue
        vec = table.dist_to[rows, :].max(axis=0) - (1.0 + eps) ** (j + 1)
        out = vec if out is None else np.maximum(out, vec)
    return out


def level_dijkstra(g: DirectedGraph, u: int, l: int, eps: float,
                   g_prime: float, gate: np.ndarray | None,
                   on: np.ndarray,
                   counters: WorkCounters | None = None,
                   ):
    """One gated search: level-l frontier set around u plus any cycle hit.

    Stops at radius (2l-1)g'/2; a settled x in band j expands only when
    gate[x] <= (l + l^2 eps)g' - (1+eps)^j. Off vertices do not exist for
    the search. Returns (settled vertex array, cycle weight or inf, walk).
    """
    n = g.n
    stop = (2 * l - 1) * g_prime / 2.0
    slack = (l + l * l * eps) * g_prime
    dist = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    dist[u] = 0.0
    heap: list[tuple[float, int]] = [(0.0, u)]
    done = np.zeros(n, dtype=bool)
    settled: list[int] = []
    g_u = math.inf
    walk: list[int] | None = None
    expanded = 0
    while heap:
        d, x = heapq.heappop(heap)
        if done[x] or d > dist[x]:
            continue
        done[x] = True
        if d > stop:
            break
        settled.append(x)
        heads, weights = g.out_edges(x)
        pos = int(np.searchsorted(heads, u))
        if pos < heads.shape[0] and heads[pos] == u:
            cand = d + float(weights[pos])
            if cand < g_u:
                g_u = cand
                walk = [x]
                while walk[-1] != u:
                    walk.append(int(parent[walk[-1]]))
                walk.reverse()
        if gate is not None and gate[x] > slack - _floor_pow(d, eps):
            continue
        expanded += 1
        for y, w in zip(heads, weights):
            y = int(y)
            if not on[y]:
                continue
            nd = d + float(w)
            if nd < dist[y]:
                dist[y] = nd
                parent[y] = x
                heapq.heappush(heap, (nd, y))
    if counters is not None:
        counters.note_search(expanded, l, len(settled))
    return np.array(sorted(settled), dtype=np.int64), g_u, walk


def _cycle_through(g: DirectedGraph, u: int) -> tuple[float, list[int] | None]:
    """Exact shortest cycle through u: plain Dijkstra plus closing edges."""
    n = g.n
    dist = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    dist[u] = 0.0
    heap: list[tuple[float, int]] = [(0.0, u)]
    done = np.zeros(n, dtype=bool)
    while heap:
        d, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        heads, weights = g.out_edges(x)
        for y, w in zip(heads, weights):
            y = int(y)
            nd = d + float(w)
            if nd < dist[y]:
                dist[y] = nd
                parent[y] = x
                heapq.heappush(heap, (nd, y))
    best = math.inf
    best_tail = -1
    tails, weights = g.in_edges(u)
    for x, w in zip(tails, weights):
        x = int(x)
        if x == u:
            continue
        cand = dist[x] + float(w)
        if cand < best:
            best = cand
            best_tail = x
    if not math.isfinite(best):
        return math.inf, None
    walk = [best_tail]
    while walk[-1] != u:
        walk.append(int(parent[walk[-1]]))
    walk.reverse()
    return best, walk


def _recurse_estimate(g: DirectedGraph, k: int, eps: float, seed: int,
                      config: SamplingConfig,
                      counters: WorkCounters | None, depth: int,
                      trace: list | None,
                      ) -> tuple[float, list[int] | None]:
    """Girth estimate of an arbitrary subgraph: per-component recursion."""
    best = math.inf
    best_walk: list[int] | None = None
    for idx, comp in enumerate(scc(g).components):
        if comp.shape[0] < 2:
            continue
        sub, old_ids = induced_subgraph(g, comp)
        comp_seed = int(stream(seed, "component", depth, idx).integers(2 ** 63))
        est, walk = _component_2k(sub, k, eps, comp_seed, config, counters,
                                  depth, trace)
        if est < best:
            best = est
            best_walk = [int(old_ids[x]) for x in walk]
    return best, best_walk


def _component_2k(sub: DirectedGraph, k: int, eps: float, seed: int,
                  config: SamplingConfig, counters: WorkCounters | None,
                  depth: int, trace: list | None,
                  ) -> tuple[int, list[int]]:
    n0 = sub.n
    if n0 <= config.exact_base:
        res = exact_girth(sub)
        assert res.witness is not None
        return int(res.estimate), list(res.witness)

    alpha = solve_alpha(k).alpha
    beta = k + k * k * eps + k * eps
    n_alpha = n0 ** alpha

    size_q = min(n0, math.ceil(config.landmark_scale
                               * n_alpha * config.log(n0)))
    lt = sample_landmarks(sub, size_q, seed, predecessors=True,
                          key=("landmarks", depth))
    maxleg = lt.min_distinct_maxleg()
    assert math.isfinite(maxleg), "strongly connected component has a cycle"
    # smallest scale whose coverage radius beta*(1+eps)^{i+1} admits a
    # distinct landmark pair both ways
    i_min = 0
    while beta * (1.0 + eps) ** (i_min + 1) < maxleg:
        i_min += 1
    g_prime = (1.0 + eps) ** i_min

    g_med, row, v = lt.min_distinct_roundtrip()
    best = float(g_med)
    best_walk = lt.roundtrip_walk(row, v)

    scale = i_min - 1
    rsub = sub.reverse()
    samples_fwd = samples_rev = None
    if scale >= 1:
        samples_fwd = build_samples_general(
            sub, scale, eps, beta, alpha, lt, seed, config)
        lt_rev = LandmarkTable(graph=rsub, landmarks=lt.landmarks,
                               dist_from=lt.dist_to, dist_to=lt.dist_from,
                               row_of=lt.row_of)
        rev_seed = int(stream(seed, "reverse").integers(2 ** 63))
        samples_rev = build_samples_general(
            rsub, scale, eps, beta, alpha, lt_rev, rev_seed, config)

    ls = LevelSets(on=np.ones(n0, dtype=bool), estimate=g_prime,
                   scale=i_min, beta=beta)

    for u in range(n0):
        if not ls.on[u]:
            continue
        gate_fwd = level_gate_vector(samples_fwd, u, eps)
        gate_rev = level_gate_vector(samples_rev, u, eps)
        s_sets: list[np.ndarray] = []
        s1, g_u, walk = level_dijkstra(sub, u, 1, eps, g_prime, gate_fwd,
                                       ls.on, counters)
        if g_u < best:
            best, best_walk = g_u, walk
        t1, g_u, walk = level_dijkstra(rsub, u, 1, eps, g_prime, gate_rev,
                                       ls.on, counters)
        if g_u < best:
            best, best_walk = g_u, list(reversed(walk))
        s_sets.append(s1)
        ls.sets[(u, 1)] = s1

        if s1.shape[0] <= n_alpha and t1.shape[0] <= n_alpha:
            union = np.union1d(s1, t1)
            inner, old2 = induced_subgraph(sub, union)
            u_local = int(np.searchsorted(union, u))
            cand, walk = _cycle_through(inner, u_local)
            if cand < best:
                best = cand
                best_walk = [int(old2[x]) for x in walk]
            if trace is not None:
                trace.append({"depth": depth, "u": u, "action": "small-ball",
                              "sizes": [int(s1.shape[0]), int(t1.shape[0])]})
            ls.mark_off([u])
            continue

        for l in range(2, k + 1):
            sl, g_u, walk = level_dijkstra(sub, u, l, eps, g_prime, gate_fwd,
                                           ls.on, counters)
            if g_u < best:
                best, best_walk = g_u, walk
            assert np.isin(s_sets[-1], sl).all(), "level sets must nest"
            s_sets.append(sl)
            ls.sets[(u, l)] = sl
        sizes = [int(s.shape[0]) for s in s_sets]
        try:
            l = find_split_level(sizes, n0, alpha, config.split_c)
            chosen = s_sets[l]          # S^{l+1}, 0-based list
            if trace is not None:
                trace.append({"depth": depth, "u": u,
                              "action": f"recurse(l={l})", "sizes": sizes})
            if chosen.shape[0] >= n0:
                # recursing would not shrink; settle this region exactly
                res = exact_girth(sub)
                if res.estimate < best:
                    best = float(res.estimate)
                    best_walk = list(res.witness)
                ls.mark_off(s_sets[l - 1])
                continue
            inner, old2 = induced_subgraph(sub, chosen)
            rec_seed = int(stream(seed, "recurse", u).integers(2 ** 63))
            cand, walk = _recurse_estimate(inner, k, eps, rec_seed, config,
                                           counters, depth + 1, trace)
            if walk is not None and cand < best:
                best = cand
                best_walk = [int(old2[x]) for x in walk]
            ls.mark_off(s_sets[l - 1])
        except NoSplitFoundError:
            inner, old2 = induced_subgraph(sub, s_sets[-1])
            res = exact_girth(inner)
            if trace is not None:
                trace.append({"depth": depth, "u": u, "action": "no-split",
                              "sizes": sizes})
            if res.witness is not None and res.estimate < best:
                best = float(res.estimate)
                best_walk = [int(old2[x]) for x in res.witness]
            ls.mark_off(s_sets[-2] if k >= 2 else [u])

    assert best_walk is not None
    return int(round(best)), best_walk


def girth_approx_2k(g: DirectedGraph, k: int, eps: float = 0.25,
                    seed: int | None = None, *,
                    config: SamplingConfig = DEFAULT_CONFIG,
                    counters: WorkCounters | None = None,
                    trace: list | None = None,
                    ) -> GirthResult:
    """Estimate the girth within 2*beta*(1+eps)^2, beta = k + k^2 eps + k eps.

    Larger k is faster on big graphs and looser; k=1 matches the flat
    (2+eps) driver. The estimate is always the weight of a discovered
    closed walk; acyclic inputs are exact.
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidKError(k)
    if not (0.0 < eps < math.inf):
        raise InvalidParametersError(f"eps must be positive, got {eps}")
    if seed is None:
        seed = fresh_seed()
    if k == 1:
        flat = girth_approx_weighted(g, eps, seed, config=config,
                                     counters=counters)
        return GirthResult(flat.estimate, flat.witness, flat.guarantee,
                           ALGORITHM, seed)
    best, best_walk = _recurse_estimate(g, k, eps, seed, config, counters,
                                        0, trace)
    if best_walk is None:
        return GirthResult(INF, None, Guarantee.exact(), ALGORITHM, seed)
    beta = k + k * k * eps + k * eps
    factor = 2.0 * beta * (1.0 + eps) ** 2
    return GirthResult(int(round(best)), best_walk, Guarantee.within(factor),
                       ALGORITHM, seed)


def girth_approx_strongpoly(g: DirectedGraph, k: int = 1, eps: float = 0.25,
                            seed: int | None = None, *,
                            config: SamplingConfig = DEFAULT_CONFIG,
                            ) -> GirthResult:
    """Rescaled variant whose runtime is independent of weight magnitude.

    Rescales weights by R = W*eps/n, runs the (2k+eps) driver on the
    rescaled graph, and re-prices the witness at original weights; the
    rounding costs one extra eps in the factor.
    """
    from .results import walk_weight
    from .weighted import rescale_for_strong_polytime

    if seed is None:
        seed = fresh_seed()
    if not any(c.shape[0] >= 2 for c in scc(g).components):
        return GirthResult(INF, None, Guarantee.exact(), "strong-poly", seed)
    si = rescale_for_strong_polytime(g, eps, k)
    inner = girth_approx_2k(si.graph, k, eps, seed, config=config)
    assert inner.witness is not None
    estimate = walk_weight(g, inner.witness)
    beta = k + k * k * eps + k * eps
    factor = (2.0 * beta * (1.0 + eps) ** 2 if k > 1 else 2.0 + eps) + eps
    return GirthResult(int(estimate), inner.witness,
                       Guarantee.within(factor), "strong-poly", seed)
