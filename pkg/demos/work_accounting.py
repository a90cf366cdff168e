"""
Work accounting: the caps behind the runtime claims
===================================================

The pruned searches carry counters so the sizes the analysis promises
can be checked on live runs: how many searches ran, how deep any BFS
went, and the largest number of expansions a single distance band ever
saw. A search hunting cycles of length at most i may expand at most i
levels; the sampled gates bound how wide any level can grow.
"""

import time

import numpy as np

import girthkit as gk
from girthkit.unweighted import pruned_bfs_cycle

# An ungated pruned BFS is just a depth-capped cycle search: the level
# counter never passes the cap i, and the hit appears once i reaches the
# cycle length through the start vertex.
ring = gk.directed_cycle(20)
print("depth cap i   found        levels used")
for i in (5, 10, 19, 20, 25):
    c = gk.WorkCounters()
    hit = pruned_bfs_cycle(ring, 0, i, samples=None, counters=c)
    label = f"cycle len {hit[0]}" if hit else "none"
    print(f"{i:11d}   {label:12s} {c.max_levels}")
    assert c.max_levels <= i

# The full driver notes every pruned search it runs. At desk sizes the
# default sample constants saturate, so the gates close almost
# immediately; the point is the caps hold, with room to spare.
print("\nn      m      searches   max levels   worst band      ms")
for n in (100, 200, 400):
    m = 5 * n
    g = gk.directed_gnm(n, m, seed=n)
    counters = gk.WorkCounters()
    t0 = time.perf_counter()
    gk.girth_approx_unweighted(g, seed=4, counters=counters)
    ms = 1000 * (time.perf_counter() - t0)
    cap_levels = int((n + 6 * m) ** 0.25) + 1
    cap_band = gk.DEFAULT_CONFIG.survivor_cap(n + 6 * m)
    assert counters.max_levels <= cap_levels
    assert counters.max_band_expanded <= cap_band
    print(f"{n:<6d} {m:<6d} {counters.searches:<10d} "
          f"{counters.max_levels} <= {cap_levels:<7d} "
          f"{counters.max_band_expanded} <= {cap_band:<10d} {ms:6.1f}")

# The same counters ride along the weighted driver.
g = gk.directed_gnm(300, 1500, weights="uniform", max_weight=30, seed=77)
counters = gk.WorkCounters()
gk.girth_approx_weighted(g, eps=0.25, seed=4, counters=counters)
print(f"\nweighted n=300: {counters.searches} pruned searches, "
      f"{counters.total_expanded} expansions total")
