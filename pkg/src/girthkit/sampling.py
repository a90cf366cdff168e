"""Landmark distance tables and iterated filter samples.

Two randomized ingredients shared by the approximation drivers:

* landmark tables: distances from and to a uniformly sampled vertex set,
  computed in bulk (scipy CSR searches); they yield coverage sets, scale
  selection, and landmark-roundtrip girth estimates with witnesses;
* per-vertex filter samples: for each source u and distance band j, a small
  set of representatives drawn round by round from u's band, where each
  round keeps only candidates close to everything already chosen. Searches
  later expand a vertex only if it is close to all representatives of its
  band, which is what caps their work.

All "100 log n", "10 log n", "2 log n" constants are configuration with
those defaults; natural log throughout. Whenever a requested sample meets or
exceeds its population, the whole population is taken and the corresponding
high-probability statements become certainties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .errors import SampleNotSubsetError
from .graph import DirectedGraph
from .rng import stream

_NOPRED = -9999  # scipy's sentinel for "no predecessor"


@dataclass(frozen=True)
class SamplingConfig:
    """Tunable constants; defaults follow the analysis, tests shrink them."""

    landmark_scale: float = 100.0   # landmark/pool sizes: scale * n^a * ln n
    pick_scale: float = 10.0        # per-round subsample: scale * ln n
    rounds_scale: float = 2.0       # sampling rounds: scale * ln n
    highgirth_scale: float = 100.0  # source sample for the large-girth sweep
    split_c: float = 2.0            # split inequality constant
    exact_base: int = 64            # recursion below this runs the exact oracle
    oracle_cap: int = 1024

    def log(self, n: int) -> float:
        return math.log(max(n, 2))

    def rounds(self, n: int) -> int:
        return max(1, math.ceil(self.rounds_scale * self.log(n)))

    def pick_size(self, n: int) -> int:
        return max(1, math.ceil(self.pick_scale * self.log(n)))

    def pool_size(self, n: int, exponent: float = 0.5) -> int:
        return max(1, math.ceil(self.landmark_scale * n ** exponent * self.log(n)))

    def survivor_cap(self, n: int, alpha: float = 0.5) -> int:
        # the filter guarantee caps gate-passing vertices per band at
        # O(n^(1-alpha)) up to the same log factor the pool sizes carry
        return max(1, math.ceil(self.landmark_scale
                                * n ** (1.0 - alpha) * self.log(n)))


DEFAULT_CONFIG = SamplingConfig()


@dataclass
class WorkCounters:
    """Search effort accounting, asserted against the caps by the test suite."""

    searches: int = 0
    total_expanded: int = 0
    max_levels: int = 0             # deepest BFS level that expanded anything
    max_band_expanded: int = 0      # most expansions in one distance band

    def note_search(self, expanded: int, levels: int, worst_band: int) -> None:
        self.searches += 1
        self.total_expanded += expanded
        self.max_levels = max(self.max_levels, levels)
        self.max_band_expanded = max(self.max_band_expanded, worst_band)


# -- landmark tables ---------------------------------------------------------


def bulk_distances(g: DirectedGraph, sources: np.ndarray, *,
                   reverse: bool = False, predecessors: bool = False):
    """Distances (and optionally predecessors) from ``sources`` in bulk."""
    sources = np.asarray(sources, dtype=np.int64)
    if sources.size == 0:
        d = np.zeros((0, g.n), dtype=np.float64)
        return (d, np.zeros((0, g.n), dtype=np.int32)) if predecessors else (d, None)
    mat = g.csr_reverse() if reverse else g.csr()
    if predecessors:
        d, p = _csgraph_dijkstra(mat, directed=True, indices=sources,
                                 unweighted=not g.weighted,
                                 return_predecessors=True)
        return np.atleast_2d(d), np.atleast_2d(p)
    d = _csgraph_dijkstra(mat, directed=True, indices=sources,
                          unweighted=not g.weighted)
    return np.atleast_2d(d), None


@dataclass
class LandmarkTable:
    """Distances from and to a fixed landmark set.

    ``dist_from[r, v]`` is d(landmark_r, v); ``dist_to[r, v]`` is
    d(v, landmark_r). Predecessor rows, when kept, reconstruct shortest
    paths for witnesses.
    """

    graph: DirectedGraph
    landmarks: np.ndarray
    dist_from: np.ndarray
    dist_to: np.ndarray
    pred_from: np.ndarray | None = None
    pred_to: np.ndarray | None = None
    row_of: dict[int, int] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return int(self.landmarks.shape[0])

    def path_from(self, row: int, v: int) -> list[int]:
        """Shortest path landmark -> v as a vertex list."""
        assert self.pred_from is not None
        src = int(self.landmarks[row])
        path = [v]
        while path[-1] != src:
            p = int(self.pred_from[row, path[-1]])
            assert p != _NOPRED, "unreachable target has no path"
            path.append(p)
        path.reverse()
        return path

    def path_to(self, row: int, v: int) -> list[int]:
        """Shortest path v -> landmark as a vertex list."""
        assert self.pred_to is not None
        dst = int(self.landmarks[row])
        path = [v]
        while path[-1] != dst:
            p = int(self.pred_to[row, path[-1]])
            assert p != _NOPRED, "unreachable target has no path"
            path.append(p)
        return path

    def roundtrip_walk(self, row: int, v: int) -> list[int]:
        """Closed walk landmark -> v -> landmark (closing edge implicit)."""
        forward = self.path_from(row, v)
        backward = self.path_to(row, v)
        return forward + backward[1:-1]

    def min_distinct_roundtrip(self) -> tuple[float, int, int]:
        """min over landmarks q and v != q of d(q,v) + d(v,q).

        Returns (value, landmark row, v); value is inf when no distinct pair
        has a finite roundtrip.
        """
        total = self.dist_from + self.dist_to
        cols = self.landmarks[:, None] == np.arange(self.graph.n)[None, :]
        total = np.where(cols, np.inf, total)
        if total.size == 0 or not np.isfinite(total).any():
            return math.inf, -1, -1
        row, v = np.unravel_index(np.argmin(total), total.shape)
        return float(total[row, v]), int(row), int(v)

    def min_distinct_maxleg(self) -> float:
        """min over landmarks q and v != q of max(d(q,v), d(v,q))."""
        worst = np.maximum(self.dist_from, self.dist_to)
        cols = self.landmarks[:, None] == np.arange(self.graph.n)[None, :]
        worst = np.where(cols, np.inf, worst)
        if worst.size == 0:
            return math.inf
        return float(worst.min())


def sample_landmarks(g: DirectedGraph, size: int, seed: int, *,
                     predecessors: bool = False,
                     key: tuple = ("landmarks",),
                     population: int | None = None) -> LandmarkTable:
    """Uniform landmark sample (whole population once size reaches it) with
    its distance table in both directions.

    ``population`` restricts sampling to vertex ids below it; reduced graphs
    keep original vertices first, so this draws landmarks from them only.
    """
    n = g.n if population is None else population
    if size >= n:
        ids = np.arange(n, dtype=np.int64)
    else:
        rng = stream(seed, *key)
        ids = np.sort(rng.choice(n, size=size, replace=False)).astype(np.int64)
    dist_from, pred_from = bulk_distances(g, ids, predecessors=predecessors)
    dist_to, pred_to = bulk_distances(g, ids, reverse=True,
                                      predecessors=predecessors)
    return LandmarkTable(
        graph=g, landmarks=ids, dist_from=dist_from, dist_to=dist_to,
        pred_from=pred_from, pred_to=pred_to,
        row_of={int(v): i for i, v in enumerate(ids)},
    )


def covered_by_landmarks(lt: LandmarkTable, radius: float) -> np.ndarray:
    """Vertices on a certified roundtrip with both legs <= radius.

    A non-landmark v is covered when some landmark q has d(v,q) <= radius
    and d(q,v) <= radius. A landmark q is covered when any other vertex w
    plays that role; its zero-length walk to itself certifies no cycle, so
    the self pair never counts.
    """
    both = (lt.dist_to <= radius) & (lt.dist_from <= radius)
    rows = np.arange(lt.count)
    both[rows, lt.landmarks] = False
    covered = both.any(axis=0)
    # for a landmark the partner may be any vertex, and any distinct
    # landmark that covers it is such a partner, so this is exhaustive
    covered[lt.landmarks] = both.any(axis=1)
    return np.where(covered)[0].astype(np.int64)


# -- per-vertex filter samples ----------------------------------------------


@dataclass
class SampleSets:
    """Per (source, band) representative sets over a shared distance table.

    ``rows(u, j)`` are row indices into ``table``; ``pass_vector(u, j)`` is
    the gate "close to every representative of this band": True where
    max over representatives y of d(x, y) <= radius.
    """

    table: LandmarkTable
    by_level: dict[tuple[int, int], np.ndarray]
    scale: int
    radius: float
    config: SamplingConfig
    _gate_cache: dict[tuple[int, int], np.ndarray] = field(default_factory=dict,
                                                           repr=False)

    def rows(self, u: int, j: int) -> np.ndarray:
        return self.by_level.get((u, j), np.zeros(0, dtype=np.int64))

    def vertices(self, u: int, j: int) -> np.ndarray:
        return self.table.landmarks[self.rows(u, j)]

    def pass_vector(self, u: int, j: int) -> np.ndarray | None:
        """Bool gate over all vertices for band (u, j); None means vacuous."""
        rows = self.rows(u, j)
        if rows.size == 0:
            return None
        key = (u, j)
        vec = self._gate_cache.get(key)
        if vec is None:
            vec = self.table.dist_to[rows, :].max(axis=0) <= self.radius
            self._gate_cache[key] = vec
        return vec

    def drop_gate_cache(self, u: int) -> None:
        for key in [k for k in self._gate_cache if k[0] == u]:
            del self._gate_cache[key]


def _filter_rounds(table: LandmarkTable, pools: list[np.ndarray],
                   member_rows_fn, radius: float, pick: int,
                   seed: int, u: int, j_key: int) -> np.ndarray:
    """Shared per-(u, j) round loop: filter each pool against the picks so
    far, take everything when small, subsample when large, stop early."""
    chosen: list[np.ndarray] = []
    chosen_ids = np.zeros(0, dtype=np.int64)
    for k, pool_rows in enumerate(pools):
        cand = member_rows_fn(pool_rows)
        if chosen_ids.size and cand.size:
            close = table.dist_from[np.ix_(cand, chosen_ids)].max(axis=1) <= radius
            cand = cand[close]
        if cand.size < pick:
            chosen.append(cand)
            chosen_ids = np.union1d(chosen_ids, table.landmarks[cand])
            break
        rng = stream(seed, "pick", u, j_key, k)
        take = np.sort(rng.choice(cand, size=pick, replace=False))
        chosen.append(take)
        chosen_ids = np.union1d(chosen_ids, table.landmarks[take])
    if not chosen:
        return np.zeros(0, dtype=np.int64)
    return np.unique(np.concatenate(chosen))


def build_samples_unweighted(g: DirectedGraph, i: int, seed: int,
                             config: SamplingConfig = DEFAULT_CONFIG, *,
                             sources: np.ndarray | None = None) -> SampleSets:
    """Representatives for the unit-weight search, bands j = 1..i.

    Per band and round, a fresh uniform pool of ~100 sqrt(n) log n vertices
    is filtered down to members s with d(u, s) <= j that are within i of
    everything already picked; small remainders are taken whole, large ones
    are subsampled at 10 log n, for at most 2 log n rounds.
    """
    n = g.n
    rounds = config.rounds(n)
    pick = config.pick_size(n)
    pool_size = min(n, config.pool_size(n))

    pool_ids: dict[tuple[int, int], np.ndarray] = {}
    for j in range(1, i + 1):
        for k in range(rounds):
            if pool_size >= n:
                ids = np.arange(n, dtype=np.int64)
            else:
                rng = stream(seed, "pool", j, k)
                ids = np.sort(rng.choice(n, size=pool_size, replace=False))
            pool_ids[(j, k)] = ids.astype(np.int64)

    union = (np.unique(np.concatenate(list(pool_ids.values())))
             if pool_ids else np.zeros(0, dtype=np.int64))
    table = _table_for(g, union)
    pools_rows = {key: np.array([table.row_of[int(v)] for v in ids],
                                dtype=np.int64)
                  for key, ids in pool_ids.items()}

    if sources is None:
        sources = np.arange(n, dtype=np.int64)

    by_level: dict[tuple[int, int], np.ndarray] = {}
    for u in sources:
        u = int(u)
        for j in range(1, i + 1):
            def members(pool_rows, _u=u, _j=j):
                reach = table.dist_to[pool_rows, _u]  # d(u, s)
                return pool_rows[reach <= _j]

            rows = _filter_rounds(
                table, [pools_rows[(j, k)] for k in range(rounds)],
                members, radius=float(i), pick=pick, seed=seed, u=u, j_key=j)
            if rows.size:
                by_level[(u, j)] = rows
    return SampleSets(table=table, by_level=by_level, scale=i,
                      radius=float(i), config=config)


def build_samples_general(g: DirectedGraph, i: int, eps: float, beta: float,
                          alpha: float, lt: LandmarkTable, seed: int,
                          config: SamplingConfig = DEFAULT_CONFIG, *,
                          sources: np.ndarray | None = None) -> SampleSets:
    """Representatives for weighted searches, bands j = -1..i.

    Band j holds vertices with (1+eps)^j <= d(u, x) < (1+eps)^{j+1}; j = -1
    is the boundary band d(u, x) = 0 that weight-0 auxiliary edges create.
    Pools draw each vertex outside the landmark-covered set independently
    with probability ~100 log n / n^alpha; the filter radius is
    beta * (1+eps)^{i+1}. Survivor sets (vertices close to all their band's
    representatives) end up at O(n^{1-alpha}) with high probability.
    """
    n = g.n
    radius = beta * (1.0 + eps) ** (i + 1)
    rounds = config.rounds(n)
    pick = config.pick_size(n)

    covered = covered_by_landmarks(lt, radius)
    zmask = np.ones(n, dtype=bool)
    zmask[covered] = False
    pool_base = np.where(zmask)[0].astype(np.int64)

    p = min(1.0, config.landmark_scale * config.log(n) / n ** alpha)
    pool_ids: dict[tuple[int, int], np.ndarray] = {}
    for j in range(-1, i + 1):
        for k in range(rounds):
            if p >= 1.0 or pool_base.size == 0:
                ids = pool_base
            else:
                rng = stream(seed, "pool", j + 1, k)
                ids = pool_base[rng.random(pool_base.size) < p]
            pool_ids[(j, k)] = ids

    union = (np.unique(np.concatenate(list(pool_ids.values())))
             if pool_ids else np.zeros(0, dtype=np.int64))
    table = _table_for(g, union)
    pools_rows = {key: np.array([table.row_of[int(v)] for v in ids],
                                dtype=np.int64)
                  for key, ids in pool_ids.items()}

    if sources is None:
        sources = np.arange(n, dtype=np.int64)

    by_level: dict[tuple[int, int], np.ndarray] = {}
    for u in sources:
        u = int(u)
        for j in range(-1, i + 1):
            upper = (1.0 + eps) ** (j + 1)

            def members(pool_rows, _u=u, _up=upper):
                reach = table.dist_to[pool_rows, _u]  # d(u, s)
                return pool_rows[reach < _up]

            rows = _filter_rounds(
                table, [pools_rows[(j, k)] for k in range(rounds)],
                members, radius=radius, pick=pick, seed=seed, u=u,
                j_key=j + 1)
            if rows.size:
                by_level[(u, j)] = rows
    return SampleSets(table=table, by_level=by_level, scale=i, radius=radius,
                      config=config)


def _table_for(g: DirectedGraph, ids: np.ndarray) -> LandmarkTable:
    dist_from, _ = bulk_distances(g, ids)
    dist_to, _ = bulk_distances(g, ids, reverse=True)
    return LandmarkTable(
        graph=g, landmarks=ids, dist_from=dist_from, dist_to=dist_to,
        row_of={int(v): i for i, v in enumerate(ids)},
    )


def sample_survivors(members, sample, radius: float,
                     g: DirectedGraph) -> np.ndarray:
    """Members s with d(s, r) <= radius for every r in the sample.

    The one-round shrink step: when every member has few mutually-close
    partners, a small uniform sample whittles the survivor set down to at
    most a 0.8 fraction with high probability. The sample must come from
    the member set; an empty sample keeps everyone.
    """
    members = np.unique(np.asarray(list(members), dtype=np.int64))
    sample = np.unique(np.asarray(list(sample), dtype=np.int64))
    if sample.size and not np.isin(sample, members).all():
        raise SampleNotSubsetError("sample must be a subset of the member set")
    if sample.size == 0:
        return members
    dist_to_sample, _ = bulk_distances(g, sample, reverse=True)
    ok = dist_to_sample[:, members].max(axis=0) <= radius
    return members[ok]
