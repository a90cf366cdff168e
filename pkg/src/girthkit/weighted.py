"""Weighted girth approximation, factor 2+eps, and roundtrip spanners.

The weighted machinery buckets distances into geometric bands
[(1+eps)^j, (1+eps)^{j+1}) and runs pruned priority-queue searches whose
expansion gate consults the band's representative sample. One data-chosen
scale i suffices for the girth; the spanner construction sweeps all scales
and keeps every search tree it grows, plus full shortest-path trees from
the landmarks.

Weight 0 appears only on auxiliary edges that transforms introduce; a
distance of exactly 0 falls into the boundary band indexed -1.

The rescaling utilities at the bottom remove the dependence on the weight
magnitude: they find the smallest weight threshold W whose edges already
contain a cycle, drop hopeless heavy edges, and divide everything by
W·eps/n so the interesting weights fit in a polynomial range.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import (AcyclicGraphError, ContractViolationError,
                     InvalidEpsilonError, InvalidKError)
from .graph import DirectedGraph, from_arrays, induced_subgraph, scc
from .results import INF, GirthResult, Guarantee, SpannerSubgraph, walk_weight
from .rng import fresh_seed, stream
from .sampling import (DEFAULT_CONFIG, LandmarkTable, SampleSets,
                       SamplingConfig, WorkCounters, build_samples_general,
                       bulk_distances, covered_by_landmarks, sample_landmarks)

ALGORITHM = "weighted-2eps"


def _check_eps(eps: float) -> None:
    if not (0.0 < eps < math.inf):
        raise InvalidEpsilonError(eps)


def band_index(d: float, eps: float) -> int:
    """Index j with (1+eps)^j <= d < (1+eps)^{j+1}; -1 for d == 0.

    Float log is only a first guess; the result is nudged until the
    defining inequalities hold exactly in float arithmetic.
    """
    if d < 0:
        raise ValueError("distances are nonnegative")
    if d == 0:
        return -1
    base = 1.0 + eps
    j = int(math.floor(math.log(d) / math.log1p(eps)))
    while base ** j > d:
        j -= 1
    while base ** (j + 1) <= d:
        j += 1
    return j


def pruned_dijkstra_cycle(g: DirectedGraph, u: int, i: int, eps: float,
                          samples: SampleSets | None,
                          counters: WorkCounters | None = None,
                          collect_tree: bool = False,
                          ):
    """Pruned priority-queue search from u at scale i.

    Settled vertices past (1+eps)^{i+1} stop the search. A settled x in
    band j expands only if it is within the sample radius of every
    representative in R^j(u); the cycle estimate still updates on every
    settled edge (x, u), expansion gate or not, so pruning never hides a
    detection at the last hop.

    Returns (cycle weight through u or inf, witness walk or None,
    tree edges as (tail, head) pairs when collect_tree).
    """
    n = g.n
    stop = (1.0 + eps) ** (i + 1)
    dist = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    dist[u] = 0.0
    heap: list[tuple[float, int]] = [(0.0, u)]
    done = np.zeros(n, dtype=bool)
    g_u = math.inf
    walk: list[int] | None = None
    tree: list[tuple[int, int]] = []
    expanded = 0
    band_counts: dict[int, int] = {}
    max_band = -1
    while heap:
        d, x = heapq.heappop(heap)
        if done[x] or d > dist[x]:
            continue
        done[x] = True
        if d > stop:
            break
        if collect_tree and x != u:
            tree.append((int(parent[x]), x))
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
        j = band_index(d, eps)
        gate = samples.pass_vector(u, j) if samples is not None else None
        if gate is not None and not gate[x]:
            continue
        expanded += 1
        band_counts[j] = band_counts.get(j, 0) + 1
        max_band = max(max_band, j)
        for y, w in zip(heads, weights):
            y = int(y)
            nd = d + float(w)
            if nd < dist[y]:
                dist[y] = nd
                parent[y] = x
                heapq.heappush(heap, (nd, y))
    if counters is not None:
        worst = max(band_counts.values()) if band_counts else 0
        counters.note_search(expanded, max_band + 2, worst)
    return g_u, walk, tree


def _component_weighted(sub: DirectedGraph, eps: float, seed: int,
                        config: SamplingConfig,
                        counters: WorkCounters | None,
                        ) -> tuple[int, list[int]]:
    """(2+eps)-estimate with witness for one strongly connected component."""
    from .transform import lift_cycle, reduce_weighted

    n0 = sub.n
    rg = reduce_weighted(sub)
    gp = rg.graph

    size_q = min(n0, math.ceil(config.landmark_scale
                               * math.sqrt(n0) * config.log(n0)))
    lt = sample_landmarks(gp, size_q, seed, predecessors=True,
                          key=("landmarks",), population=n0)
    maxleg = lt.min_distinct_maxleg()
    assert math.isfinite(maxleg), "strongly connected component has a cycle"
    # smallest i whose (1+eps)^{i+2} radius admits a distinct sampled pair
    # in both directions
    i = band_index(maxleg, eps) - 1

    g_med, row, v = lt.min_distinct_roundtrip()
    best = float(g_med)
    best_walk = lt.roundtrip_walk(row, v)
    if best > 2.0 * (1.0 + eps) ** (i + 2) * (1.0 + 1e-9):
        raise ContractViolationError(
            "landmark roundtrip exceeds twice the selection radius")
    if i >= 0:
        samples = build_samples_general(
            gp, i, eps, 1.0 + eps, 0.5, lt, seed, config,
            sources=np.arange(n0, dtype=np.int64))
        for u in range(n0):
            g_u, walk, _ = pruned_dijkstra_cycle(gp, u, i, eps, samples,
                                                 counters)
            samples.drop_gate_cache(u)
            if g_u < best:
                best = g_u
                best_walk = walk

    originals, total = lift_cycle(rg, best_walk)
    assert total == int(round(best)), "estimate is the witness weight"
    return int(total), originals


def girth_approx_weighted(g: DirectedGraph, eps: float = 0.25,
                          seed: int | None = None, *,
                          config: SamplingConfig = DEFAULT_CONFIG,
                          counters: WorkCounters | None = None,
                          ) -> GirthResult:
    """Estimate the girth within a factor of 2+eps.

    Works for unit or integer positive weights. The estimate is the weight
    of a discovered closed walk (never below the girth); with high
    probability it is within (2+eps) of it. Acyclic inputs are exact.
    """
    _check_eps(eps)
    if seed is None:
        seed = fresh_seed()
    best = INF
    best_walk: list[int] | None = None
    for idx, comp in enumerate(scc(g).components):
        if comp.shape[0] < 2:
            continue
        sub, old_ids = induced_subgraph(g, comp)
        comp_seed = int(stream(seed, "component", idx).integers(2 ** 63))
        est, walk = _component_weighted(sub, eps, comp_seed, config, counters)
        if est < best:
            best = est
            best_walk = [int(old_ids[x]) for x in walk]
    if best_walk is None:
        return GirthResult(INF, None, Guarantee.exact(), ALGORITHM, seed)
    return GirthResult(int(best), best_walk, Guarantee.within(2.0 + eps),
                       ALGORITHM, seed)


# -- roundtrip spanner -------------------------------------------------------


def _tree_edges_from_preds(sub: DirectedGraph, lt: LandmarkTable,
                           out: dict[int, str]) -> None:
    """Insert full in- and out- shortest path tree edges of every landmark."""
    for r in range(lt.count):
        q = int(lt.landmarks[r])
        tag = f"tree_of({q})"
        for v in range(sub.n):
            p = int(lt.pred_from[r, v])
            if p >= 0:
                eid = sub.edge_id(p, v)
                assert eid is not None
                out.setdefault(eid, tag)
            p = int(lt.pred_to[r, v])
            if p >= 0:
                # predecessor in the reverse search: forward edge (v, p)
                eid = sub.edge_id(v, p)
                assert eid is not None
                out.setdefault(eid, tag)


def _component_spanner(sub: DirectedGraph, eps: float, seed: int,
                       config: SamplingConfig,
                       counters: WorkCounters | None,
                       ) -> dict[int, str]:
    """Spanner edge ids (into ``sub``) with provenance, one component."""
    n0 = sub.n
    top = int(sub.max_weight) * n0
    imax = max(0, math.ceil(math.log(max(top, 2)) / math.log1p(eps)))
    size_q = min(n0, math.ceil(config.landmark_scale
                               * math.sqrt(n0) * config.log(n0)))
    rsub = sub.reverse()

    chosen: dict[int, str] = {}
    table_cache: dict[bytes, LandmarkTable] = {}
    trees_done: set[bytes] = set()
    for i in range(imax + 1):
        if size_q >= n0:
            ids = np.arange(n0, dtype=np.int64)
        else:
            rng = stream(seed, "scale", i, "landmarks")
            ids = np.sort(rng.choice(n0, size=size_q, replace=False))
            ids = ids.astype(np.int64)
        key = ids.tobytes()
        lt = table_cache.get(key)
        if lt is None:
            dist_from, pred_from = bulk_distances(sub, ids, predecessors=True)
            dist_to, pred_to = bulk_distances(sub, ids, reverse=True,
                                              predecessors=True)
            lt = LandmarkTable(graph=sub, landmarks=ids, dist_from=dist_from,
                               dist_to=dist_to, pred_from=pred_from,
                               pred_to=pred_to,
                               row_of={int(v): r for r, v in enumerate(ids)})
            table_cache[key] = lt
        if key not in trees_done:
            _tree_edges_from_preds(sub, lt, chosen)
            trees_done.add(key)

        radius = (1.0 + eps) ** (i + 2)
        covered = covered_by_landmarks(lt, radius)
        zmask = np.ones(n0, dtype=bool)
        zmask[covered] = False
        z = np.where(zmask)[0].astype(np.int64)
        if z.size == 0:
            continue
        scale_seed = int(stream(seed, "scale", i, "searches").integers(2 ** 63))
        samples_fwd = build_samples_general(sub, i, eps, 1.0 + eps, 0.5, lt,
                                            scale_seed, config, sources=z)
        lt_rev = LandmarkTable(graph=rsub, landmarks=ids,
                               dist_from=lt.dist_to, dist_to=lt.dist_from,
                               row_of=lt.row_of)
        samples_rev = build_samples_general(rsub, i, eps, 1.0 + eps, 0.5,
                                            lt_rev, scale_seed + 1, config,
                                            sources=z)
        for u in z:
            u = int(u)
            tag = f"moddijkstra_tree({u},{i})"
            _, _, tree = pruned_dijkstra_cycle(sub, u, i, eps, samples_fwd,
                                               counters, collect_tree=True)
            samples_fwd.drop_gate_cache(u)
            for x, y in tree:
                eid = sub.edge_id(x, y)
                chosen.setdefault(eid, tag)
            _, _, tree = pruned_dijkstra_cycle(rsub, u, i, eps, samples_rev,
                                               counters, collect_tree=True)
            samples_rev.drop_gate_cache(u)
            for x, y in tree:
                eid = sub.edge_id(y, x)  # reverse-graph edge, flipped back
                chosen.setdefault(eid, tag)
    return chosen


def build_roundtrip_spanner(g: DirectedGraph, eps: float = 0.25,
                            seed: int | None = None, *,
                            config: SamplingConfig = DEFAULT_CONFIG,
                            counters: WorkCounters | None = None,
                            ) -> SpannerSubgraph:
    """Subgraph preserving all roundtrip distances within a 5+12*eps factor.

    Landmark shortest-path trees cover vertex pairs near the landmarks at
    each geometric scale; pruned searches from the remaining vertices
    contribute their relaxed-edge trees. Runs per strongly connected
    component; cross-component roundtrips are infinite and unconstrained.
    """
    _check_eps(eps)
    if seed is None:
        seed = fresh_seed()
    provenance: dict[int, str] = {}
    for idx, comp in enumerate(scc(g).components):
        if comp.shape[0] < 2:
            continue
        sub, old_ids = induced_subgraph(g, comp)
        comp_seed = int(stream(seed, "component", idx).integers(2 ** 63))
        chosen = _component_spanner(sub, eps, comp_seed, config, counters)
        tails, heads = sub.edge_endpoints()
        for eid, tag in chosen.items():
            host_eid = g.edge_id(int(old_ids[tails[eid]]),
                                 int(old_ids[heads[eid]]))
            assert host_eid is not None
            provenance.setdefault(host_eid, tag)
    edge_ids = np.array(sorted(provenance), dtype=np.int64)
    return SpannerSubgraph(host=g, edge_ids=edge_ids, provenance=provenance,
                           declared_stretch=5.0 + 12.0 * eps, eps=eps,
                           seed=seed)


def spanner_for_stretch(g: DirectedGraph, stretch: float,
                        seed: int | None = None, *,
                        config: SamplingConfig = DEFAULT_CONFIG,
                        ) -> SpannerSubgraph:
    """Convenience wrapper: target stretch 5+eps' via eps = eps'/12."""
    if stretch <= 5.0:
        raise InvalidEpsilonError(stretch - 5.0)
    return build_roundtrip_spanner(g, (stretch - 5.0) / 12.0, seed,
                                   config=config)


# -- strongly polynomial rescaling ------------------------------------------


def cycle_weight_threshold(g: DirectedGraph) -> int:
    """Smallest weight W whose <=W-edge subgraph already has a cycle."""
    weights = np.unique(g.out_weights)
    tails, heads = g.edge_endpoints()

    def has_cycle(limit: int) -> bool:
        keep = g.out_weights <= limit
        if not keep.any():
            return False
        sub = from_arrays(g.n, tails[keep], heads[keep],
                          np.ones(int(keep.sum()), dtype=np.int64),
                          weighted=False)
        return any(c.shape[0] >= 2 for c in scc(sub).components)

    lo, hi = 0, weights.shape[0] - 1
    if hi < 0 or not has_cycle(int(weights[hi])):
        raise AcyclicGraphError("graph has no cycle")
    while lo < hi:
        mid = (lo + hi) // 2
        if has_cycle(int(weights[mid])):
            hi = mid
        else:
            lo = mid + 1
    return int(weights[lo])


@dataclass
class ScaledInstance:
    """Rescaled copy of a graph with weights divided by unit R = W*eps/n.

    W is the cycle weight threshold, so W <= girth <= n*W; edges heavier
    than 3*k*n*W cannot join any competitive cycle and are discarded.
    Each rescaled weight satisfies w - R <= R*floor(w/R) <= w, and a
    rescaled weight of 0 is flagged auxiliary.
    """

    graph: DirectedGraph
    host: DirectedGraph
    threshold: int
    unit: float
    eps: float
    k: int
    edge_map: np.ndarray
    discarded: np.ndarray

    @property
    def discarded_count(self) -> int:
        return int(self.discarded.shape[0])


def rescale_for_strong_polytime(g: DirectedGraph, eps: float,
                                k: int = 1) -> ScaledInstance:
    """Build the rescaled instance whose weights are polynomially bounded."""
    _check_eps(eps)
    if k < 1:
        raise InvalidKError(k)
    w_threshold = cycle_weight_threshold(g)
    unit = w_threshold * eps / max(g.n, 1)
    tails, heads = g.edge_endpoints()
    keep = g.out_weights <= 3 * k * g.n * w_threshold
    kept_ids = np.where(keep)[0].astype(np.int64)
    new_weights = np.floor(g.out_weights[keep] / unit).astype(np.int64)
    aux = new_weights == 0
    graph = from_arrays(g.n, tails[keep], heads[keep], new_weights,
                        weighted=True, aux_mask=aux if aux.any() else None,
                        allow_zero=True)
    # edge ids survive in order: kept edges keep their relative (tail, head)
    # lexicographic rank, so position r in the new graph maps to kept_ids[r]
    return ScaledInstance(graph=graph, host=g, threshold=w_threshold,
                          unit=unit, eps=eps, k=k, edge_map=kept_ids,
                          discarded=np.where(~keep)[0].astype(np.int64))
