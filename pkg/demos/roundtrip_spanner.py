"""
Roundtrip spanners: keep few edges, preserve rt(u, v)
=====================================================

A roundtrip spanner is an edge subset H of a digraph G with
rt_H(u, v) <= stretch * rt_G(u, v) for every vertex pair, where
rt(u, v) = d(u, v) + d(v, u). The construction keeps two kinds of
edges: shortest-path trees around sampled landmarks, and the relaxed
edges of pruned per-vertex searches at each weight scale. Stretch is
5 + 12*eps.
"""

import girthkit as gk

g = gk.directed_gnm(250, 2500, weights="uniform", max_weight=40, seed=5)
sp = gk.build_roundtrip_spanner(g, eps=0.25, seed=23)

print(f"host graph : n={g.n} m={g.m}")
print(f"spanner    : {sp.edge_count} edges kept "
      f"({100 * sp.edge_count / g.m:.1f}%), declared stretch {sp.declared_stretch:g}")

# Which searches contributed the kept edges.
for kind, count in sorted(sp.provenance_counts().items()):
    print(f"  {kind:18s} {count}")

# The verifier compares all-pairs roundtrips in host and spanner exactly.
chk = gk.verify_spanner(g, sp, sp.declared_stretch)
print(f"verified   : ok={chk.ok}  worst ratio {chk.worst_ratio:.3f} "
      f"of allowed {chk.stretch_bound:g}")
assert chk.ok

# Asking for a target stretch directly solves 5 + 12*eps = stretch for eps.
sp8 = gk.spanner_for_stretch(g, stretch=8.0, seed=23)
print(f"stretch 8  : eps={sp8.eps:g}, {sp8.edge_count} edges")

# Cheating is caught: drop half the spanner's edges and verify again.
thin = gk.SpannerSubgraph(host=g, edge_ids=sp.edge_ids[::2],
                          provenance={}, declared_stretch=sp.declared_stretch,
                          eps=sp.eps)
bad = gk.verify_spanner(g, thin, sp.declared_stretch)
print(f"half edges : ok={bad.ok}", end="")
if not bad.ok:
    print(f"  first violation at pair ({bad.u}, {bad.v}): "
          f"roundtrip {bad.rt_sub:g} vs host {bad.rt_host:g}")
else:
    print("  (this graph tolerated the cut)")
