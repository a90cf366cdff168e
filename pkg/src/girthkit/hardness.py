"""Gap-instance generators from the color-coding reduction.

Coloring vertices with k colors and keeping only edges that advance the
color by exactly 1 mod k makes every surviving cycle length divisible by
k. The girth of such a graph is therefore either exactly k or at least
2k, and no approximation factor below 2 can tell the two cases apart
without finding a k-cycle outright. These generators produce both kinds
of instance on demand, which is what stress-tests the factor-2 algorithms
at their boundary.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidKError, InvalidParametersError
from .graph import DirectedGraph, directed_gnm, from_arrays
from .oracle import exact_girth
from .rng import fresh_seed, stream


def layer_by_colors(g: DirectedGraph, k: int,
                    seed: int | None = None) -> DirectedGraph:
    """Random k-coloring; keep edges whose head color = tail color + 1 mod k.

    The output is a subgraph of the input on the same vertex set, and every
    one of its cycles has length divisible by k.
    """
    if not isinstance(k, int) or k < 3:
        raise InvalidKError(k, minimum=3)
    if seed is None:
        seed = fresh_seed()
    colors = stream(seed, "colors").integers(0, k, size=g.n)
    tails, heads = g.edge_endpoints()
    keep = colors[heads] == (colors[tails] + 1) % k
    return from_arrays(g.n, tails[keep], heads[keep],
                       g.out_weights[keep], weighted=g.weighted)


def _advancing_edges(tails: np.ndarray, heads: np.ndarray,
                     colors: np.ndarray, k: int) -> np.ndarray:
    return colors[heads] == (colors[tails] + 1) % k


def gap_instance(n: int, k: int, plant: bool,
                 seed: int | None = None) -> DirectedGraph:
    """Random layered digraph with girth exactly k or at least 2k.

    With plant=True the last k vertices carry colors 0..k-1 and are wired
    into one directed k-cycle that survives the layering by construction,
    pinning the girth to exactly k (no shorter cycle can exist). With
    plant=False colorings are retried until the layered graph has no
    k-cycle, leaving girth >= 2k or infinite. Host density is about four
    edges per vertex.
    """
    if not isinstance(k, int) or k < 3:
        raise InvalidKError(k, minimum=3)
    if n < k:
        raise InvalidParametersError(f"need n >= k, got n={n}, k={k}")
    if seed is None:
        seed = fresh_seed()
    m_host = min(4 * n, n * (n - 1))
    host_seed = int(stream(seed, "host").integers(2 ** 63))
    host = directed_gnm(n, m_host, seed=host_seed)
    tails, heads = host.edge_endpoints()

    if plant:
        ring = np.arange(n - k, n, dtype=np.int64)
        ring_tails = ring
        ring_heads = np.roll(ring, -1)
        colors = np.empty(n, dtype=np.int64)
        colors[ring] = np.arange(k)
        rest = stream(seed, "colors").integers(0, k, size=n - k)
        colors[:n - k] = rest
        keep = _advancing_edges(tails, heads, colors, k)
        # drop host copies of ring edges before adding the ring itself
        ring_pairs = set(zip(ring_tails.tolist(), ring_heads.tolist()))
        dup = np.array([(int(t), int(h)) in ring_pairs
                        for t, h in zip(tails, heads)])
        keep &= ~dup
        all_tails = np.concatenate([tails[keep], ring_tails])
        all_heads = np.concatenate([heads[keep], ring_heads])
        weights = np.ones(all_tails.shape[0], dtype=np.int64)
        return from_arrays(n, all_tails, all_heads, weights, weighted=False)

    for attempt in range(1000):
        colors = stream(seed, "colors", attempt).integers(0, k, size=n)
        keep = _advancing_edges(tails, heads, colors, k)
        g = from_arrays(n, tails[keep], heads[keep],
                        np.ones(int(keep.sum()), dtype=np.int64),
                        weighted=False)
        girth = exact_girth(g).estimate
        if math.isinf(girth) or girth >= 2 * k:
            return g
    raise InvalidParametersError(
        "could not avoid a k-cycle; graph too dense for unplanted gap")
