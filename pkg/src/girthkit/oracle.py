"""Exact reference computations: girth, roundtrip distances, spanner checking.

Everything here is deliberately textbook (deque BFS, heapq Dijkstra, one
full search per vertex, no pruning) and shares no search code with the
approximation modules. These are the implementations the randomized
algorithms are judged against, so their independence is the point.

Infinity is ``float('inf')``: strictly larger than any finite n * M total,
and arithmetic with it saturates on its own.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, NotASubgraphError
from .graph import DirectedGraph
from .results import INF, GirthResult, Guarantee

ORACLE_CAP = 1024  # default all-pairs size cap; callers can pass their own


def _plain_adjacency(g: DirectedGraph) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    tails, heads = g.edge_endpoints()
    for t, h, w in zip(tails.tolist(), heads.tolist(), g.out_weights.tolist()):
        adj[t].append((h, w))
    return adj


def _bfs(adj, n: int, source: int):
    """Unit-weight distances and BFS-tree parents from ``source``."""
    dist = [INF] * n
    parent = [-1] * n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        dv = dist[v]
        for w, _ in adj[v]:
            if dist[w] == INF:
                dist[w] = dv + 1
                parent[w] = v
                q.append(w)
    return dist, parent


def _dijkstra(adj, n: int, source: int):
    dist = [INF] * n
    parent = [-1] * n
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for w, wt in adj[v]:
            nd = d + wt
            if nd < dist[w]:
                dist[w] = nd
                parent[w] = v
                heapq.heappush(heap, (nd, w))
    return dist, parent


def _single_source(g: DirectedGraph, adj, source: int):
    if g.weighted:
        return _dijkstra(adj, g.n, source)
    return _bfs(adj, g.n, source)


def _path_from_parents(parent, source: int, target: int) -> list[int]:
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def exact_girth(g: DirectedGraph) -> GirthResult:
    """Minimum total weight of any directed cycle, by full search per vertex.

    For each source s the shortest cycle through s is min over in-edges
    (v, s) of d(s, v) + w(v, s); the overall minimum over sources is the
    girth. Returns estimate inf and no witness when the graph is acyclic.
    """
    adj = _plain_adjacency(g)
    best = INF
    best_witness: list[int] | None = None
    for s in range(g.n):
        dist, parent = _single_source(g, adj, s)
        in_tails, in_weights = g.in_edges(s)
        for v, w in zip(in_tails.tolist(), in_weights.tolist()):
            cand = dist[v] + w
            if cand < best:
                best = cand
                best_witness = _path_from_parents(parent, s, v)
    return GirthResult(
        estimate=best,
        witness=best_witness,
        guarantee=Guarantee.exact(),
        algorithm="exact",
    )


@dataclass
class RoundtripMatrix:
    """All-pairs distances with the roundtrip view d(u,v) + d(v,u)."""

    n: int
    dist: np.ndarray  # float64, inf where unreachable

    def roundtrip(self, u: int, v: int) -> float:
        return float(self.dist[u, v] + self.dist[v, u])

    def roundtrip_matrix(self) -> np.ndarray:
        return self.dist + self.dist.T


def exact_roundtrip(g: DirectedGraph, cap: int = ORACLE_CAP) -> RoundtripMatrix:
    """All-pairs roundtrip distances; refuses graphs larger than ``cap``."""
    if g.n > cap:
        raise CapExceededError(
            f"exact roundtrip needs n <= {cap}, got n={g.n}")
    adj = _plain_adjacency(g)
    dist = np.full((g.n, g.n), INF, dtype=np.float64)
    for s in range(g.n):
        row, _ = _single_source(g, adj, s)
        dist[s, :] = row
    return RoundtripMatrix(n=g.n, dist=dist)


@dataclass
class SpannerCheck:
    """Outcome of a spanner verification; carries the first violation found."""

    ok: bool
    stretch_bound: float
    worst_ratio: float
    u: int | None = None
    v: int | None = None
    rt_sub: float | None = None
    rt_host: float | None = None


def verify_spanner(g: DirectedGraph, h, stretch: float,
                   cap: int = ORACLE_CAP) -> SpannerCheck:
    """Check rt_H(u,v) <= stretch * rt_G(u,v) for every pair, exactly.

    ``h`` may be a :class:`SpannerSubgraph` of ``g`` or a plain graph, in
    which case its edges must be a subset of g's (same endpoints and weight).
    """
    from .results import SpannerSubgraph

    if isinstance(h, SpannerSubgraph):
        if h.host is not g and not h.host.same_as(g):
            raise NotASubgraphError("spanner was built over a different host")
        hg = h.to_graph()
    else:
        hg = h
        if hg.n != g.n:
            raise NotASubgraphError(
                f"vertex counts differ: {hg.n} vs {g.n}")
        tails, heads = hg.edge_endpoints()
        for t, hd, w in zip(tails.tolist(), heads.tolist(),
                            hg.out_weights.tolist()):
            if g.edge_weight(t, hd) != w:
                raise NotASubgraphError(
                    f"edge ({t}, {hd}, w={w}) not in the host graph")

    rt_g = exact_roundtrip(g, cap=cap).roundtrip_matrix()
    rt_h = exact_roundtrip(hg, cap=cap).roundtrip_matrix()

    # relative slack kills float ulps in stretch * rt without hiding real gaps
    limit = stretch * rt_g
    bad = rt_h > limit * (1 + 1e-9)
    np.fill_diagonal(bad, False)
    bad &= np.isfinite(rt_g)

    finite = np.isfinite(rt_g) & (rt_g > 0)
    worst = 1.0
    if finite.any():
        worst = float(np.max(rt_h[finite] / rt_g[finite]))

    if bad.any():
        u, v = map(int, np.argwhere(bad)[0])
        return SpannerCheck(ok=False, stretch_bound=stretch,
                            worst_ratio=worst, u=u, v=v,
                            rt_sub=float(rt_h[u, v]),
                            rt_host=float(rt_g[u, v]))
    return SpannerCheck(ok=True, stretch_bound=stretch, worst_ratio=worst)
