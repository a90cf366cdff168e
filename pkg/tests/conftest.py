"""Shared fixtures and an independent brute-force cycle reference.

The reference enumerator below deliberately avoids the package's own code:
it works on plain edge lists with dict adjacency and checks every simple
cycle by DFS. Slow past a dozen vertices, but that is the point; it is the
second opinion the library is tested against.
"""

from __future__ import annotations

import math
from collections import deque
from heapq import heappop, heappush

import pytest

import girthkit as gk


def bfs_dist(g: gk.DirectedGraph, s: int, reverse: bool = False) -> list[float]:
    """Plain BFS hop counts, written against out_edges only."""
    if reverse:
        g = g.reverse()
    dist = [math.inf] * g.n
    dist[s] = 0
    dq = deque([s])
    while dq:
        v = dq.popleft()
        for to in g.out_edges(v)[0].tolist():
            if math.isinf(dist[to]):
                dist[to] = dist[v] + 1
                dq.append(to)
    return dist


def dijkstra_dist(g: gk.DirectedGraph, s: int, reverse: bool = False) -> list[float]:
    """Textbook heap Dijkstra, the independent distance reference."""
    if reverse:
        g = g.reverse()
    dist = [math.inf] * g.n
    dist[s] = 0
    heap = [(0, s)]
    while heap:
        d, v = heappop(heap)
        if d > dist[v]:
            continue
        heads, weights = g.out_edges(v)
        for to, w in zip(heads.tolist(), weights.tolist()):
            if d + w < dist[to]:
                dist[to] = d + w
                heappush(heap, (d + w, to))
    return dist


def brute_cycles(n: int, edges: list[tuple[int, int, int]]):
    """Yield (length, weight, vertices) for every simple directed cycle.

    Each cycle is reported once, rooted at its smallest vertex. DFS over
    simple paths restricted to vertices >= the root keeps that canonical.
    """
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n)}
    for u, v, w in edges:
        adj[u].append((v, w))

    for root in range(n):
        stack = [(root, 0, [root])]
        while stack:
            v, weight, path = stack.pop()
            for to, w in adj[v]:
                if to == root:
                    yield len(path), weight + w, list(path)
                elif to > root and to not in path:
                    stack.append((to, weight + w, path + [to]))


def brute_girth(n: int, edges: list[tuple[int, int, int]]) -> float:
    best = math.inf
    for _, weight, _ in brute_cycles(n, edges):
        if weight < best:
            best = weight
    return best


def edge_list(g: gk.DirectedGraph) -> list[tuple[int, int, int]]:
    tails, heads = g.edge_endpoints()
    return [(int(t), int(h), int(w))
            for t, h, w in zip(tails, heads, g.out_weights)]


def random_small(rng, max_n: int = 8, weighted: bool = False):
    """A random little digraph as (n, edges) built straight from draws."""
    n = int(rng.integers(1, max_n + 1))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    density = float(rng.uniform(0.0, 0.9))
    edges = []
    for u, v in pairs:
        if rng.uniform() < density:
            w = int(rng.integers(1, 10)) if weighted else 1
            edges.append((u, v, w))
    return n, edges


def assert_sound_witness(g: gk.DirectedGraph, result) -> None:
    """The estimate must be the weight of the closed walk it reports."""
    if result.is_acyclic:
        assert result.witness is None
        return
    assert result.witness is not None
    assert gk.walk_weight(g, result.witness) == int(result.estimate)


@pytest.fixture
def triangle() -> gk.DirectedGraph:
    return gk.build_graph([(0, 1), (1, 2), (2, 0)], n=3)


@pytest.fixture
def two_cycle_5_7() -> gk.DirectedGraph:
    return gk.build_graph([(0, 1, 5), (1, 0, 7)], n=2, weighted=True)


@pytest.fixture
def tiny_config() -> gk.SamplingConfig:
    """Shrunk constants so sampling, pruning, and recursion actually engage
    at test sizes instead of degenerating into take-everything pools."""
    return gk.SamplingConfig(
        landmark_scale=1.0,
        pick_scale=1.0,
        rounds_scale=1.0,
        highgirth_scale=1.0,
        exact_base=4,
    )
