"""Girth approximation for unit-weight digraphs, factor 2.

Two estimators cover complementary regimes and the driver takes the better
of the two:

* a sampled-source sweep: breadth-first searches from ~100 n^(1-delta) log n
  uniform sources, reporting the cheapest roundtrip d(s,v) + d(v,s) over
  distinct pairs; reliable once the girth reaches n^delta, since any minimum
  cycle is then large enough for the sample to hit;
* pruned searches from every vertex at a data-chosen scale i: breadth-first
  search that only expands vertices close to all representatives of their
  level, which caps per-level work while still, with high probability,
  leaving minimum cycles intact.

Both run on the degree-reduced image of each strongly connected component,
where out-degrees are bounded and every cycle length is scaled by a known
factor t, and every estimate is the length of a concrete closed walk.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidParametersError
from .graph import DirectedGraph, induced_subgraph, scc
from .results import INF, GirthResult, Guarantee
from .rng import fresh_seed, stream
from .sampling import (DEFAULT_CONFIG, SampleSets, SamplingConfig,
                       WorkCounters, sample_landmarks)
from .sampling import build_samples_unweighted
from .transform import lift_cycle, reduce_unweighted

ALGORITHM = "unweighted-2approx"


def _check_delta(delta: float) -> None:
    if not (0.0 < delta < 1.0):
        raise InvalidParametersError(f"delta must lie in (0, 1), got {delta}")


def girth_from_sampled_sources(g: DirectedGraph, seed: int | None = None, *,
                               delta: float = 0.25,
                               config: SamplingConfig = DEFAULT_CONFIG,
                               ) -> GirthResult:
    """Cheapest roundtrip over sampled sources.

    Overestimates the girth never, and exceeds twice the girth only with
    low probability once the girth is at least n^delta. Smaller girths can
    slip through the sample; the full driver covers that regime.
    """
    _check_delta(delta)
    if g.weighted:
        raise InvalidParametersError("unit-weight graph required")
    if seed is None:
        seed = fresh_seed()
    n = g.n
    if n == 0:
        return GirthResult(INF, None, Guarantee.within(2.0), "sampled-sources",
                           seed)
    size = min(n, math.ceil(config.highgirth_scale
                            * n ** (1.0 - delta) * config.log(n)))
    lt = sample_landmarks(g, size, seed, predecessors=True, key=("sources",))
    value, row, v = lt.min_distinct_roundtrip()
    if not math.isfinite(value):
        return GirthResult(INF, None, Guarantee.within(2.0), "sampled-sources",
                           seed)
    walk = lt.roundtrip_walk(row, v)
    return GirthResult(int(value), walk, Guarantee.within(2.0),
                       "sampled-sources", seed)


def pruned_bfs_cycle(g: DirectedGraph, u: int, i: int,
                     samples: SampleSets | None,
                     counters: WorkCounters | None = None,
                     ) -> tuple[int, list[int]] | None:
    """Shortest cycle through u of length at most i, by pruned BFS.

    Levels 0..i-1 expand; a vertex joins level j only when it is within the
    sample radius of every representative in band j. An edge back into u
    closes a cycle and is checked before the visited filter, otherwise the
    start vertex would mask every detection. Returns (length, walk) with
    the walk starting at u, or None.

    With samples=None the search is an ordinary bounded BFS.
    """
    parent: dict[int, int] = {u: -1}
    frontier = [u]
    expanded = 0
    worst_band = 0
    levels_used = 0
    found: tuple[int, list[int]] | None = None
    for level in range(i):
        gate = samples.pass_vector(u, level + 1) if samples is not None else None
        nxt: list[int] = []
        worst_band = max(worst_band, len(frontier))
        for x in frontier:
            expanded += 1
            for y in g.out_edges(x)[0]:
                y = int(y)
                if y == u:
                    length = level + 1
                    walk = [x]
                    while walk[-1] != u:
                        walk.append(parent[walk[-1]])
                    walk.reverse()
                    found = (length, walk)
                    break
                if y in parent:
                    continue
                if gate is not None and not gate[y]:
                    continue
                parent[y] = x
                nxt.append(y)
            if found:
                break
        levels_used = level + 1
        if found or not nxt:
            break
        frontier = nxt
    if counters is not None:
        counters.note_search(expanded, levels_used, worst_band)
    return found


def _component_estimate(sub: DirectedGraph, seed: int, delta: float,
                        config: SamplingConfig,
                        counters: WorkCounters | None,
                        ) -> tuple[int, list[int]]:
    """2-approximation with witness for one strongly connected component."""
    n0 = sub.n
    rg = reduce_unweighted(sub)
    gp = rg.graph
    t = rg.scale

    # large-girth sweep: roundtrips from ~100 n^(1-delta) log n sampled
    # original vertices; a minimum cycle of length >= n^delta is hit whp
    size_high = min(n0, math.ceil(config.highgirth_scale
                                  * n0 ** (1.0 - delta) * config.log(n0)))
    lt_high = sample_landmarks(gp, size_high, seed, predecessors=True,
                               key=("sources",), population=n0)
    best, row, v = lt_high.min_distinct_roundtrip()
    assert math.isfinite(best), "strongly connected component has a cycle"
    best = int(best)
    best_walk = lt_high.roundtrip_walk(row, v)

    # landmark scale selection: smallest i such that some distinct sampled
    # pair has both legs within i+1, capped at the fourth root
    size_q = min(n0, math.ceil(config.landmark_scale
                               * math.sqrt(n0) * config.log(n0)))
    if size_q == size_high:
        lt_q = lt_high
    else:
        lt_q = sample_landmarks(gp, size_q, seed, predecessors=True,
                                key=("landmarks",), population=n0)
    maxleg = lt_q.min_distinct_maxleg()
    i = min(int(maxleg) - 1, int(gp.n ** 0.25))
    g_med, row_q, v_q = lt_q.min_distinct_roundtrip()
    if int(g_med) < best:
        best = int(g_med)
        best_walk = lt_q.roundtrip_walk(row_q, v_q)

    # pruned searches at scale i from every original vertex
    if i >= 1:
        samples = build_samples_unweighted(
            gp, i, seed, config, sources=np.arange(n0, dtype=np.int64))
        for u in range(n0):
            hit = pruned_bfs_cycle(gp, u, i, samples, counters)
            samples.drop_gate_cache(u)
            if hit is not None and hit[0] < best:
                best, best_walk = hit
                if best <= 2 * t:
                    break  # nothing shorter exists

    originals, total = lift_cycle(rg, best_walk)
    assert best == t * total, "every reduced cycle length is a multiple of t"
    return int(total), originals


def girth_approx_unweighted(g: DirectedGraph, seed: int | None = None, *,
                            delta: float = 0.25,
                            config: SamplingConfig = DEFAULT_CONFIG,
                            counters: WorkCounters | None = None,
                            ) -> GirthResult:
    """Estimate the girth of a unit-weight digraph within a factor of 2.

    The estimate is the length of a closed walk found along the way, so it
    never undershoots; with high probability it is at most twice the girth.
    Acyclic inputs are detected exactly. Components below the exact-oracle
    threshold are solved outright.
    """
    _check_delta(delta)
    if g.weighted:
        raise InvalidParametersError("unit-weight graph required")
    if seed is None:
        seed = fresh_seed()
    best = INF
    best_walk: list[int] | None = None
    for idx, comp in enumerate(scc(g).components):
        if comp.shape[0] < 2:
            continue
        sub, old_ids = induced_subgraph(g, comp)
        comp_seed = int(stream(seed, "component", idx).integers(2 ** 63))
        est, walk = _component_estimate(sub, comp_seed, delta, config,
                                        counters)
        if est < best:
            best = est
            best_walk = [int(old_ids[x]) for x in walk]
    if best_walk is None:
        # no component can hold a cycle, so this branch is exact
        return GirthResult(INF, None, Guarantee.exact(), ALGORITHM, seed)
    return GirthResult(int(best), best_walk, Guarantee.within(2.0),
                       ALGORITHM, seed)
