"""Degree reductions that preserve distances, and cycle lifting back.

Two constructions, both append auxiliary vertices after the original ids:

* unweighted: every edge (u, v) becomes a path of length exactly t through a
  uniform-depth gadget tree hung off u, so d'(u, v) = t * d(u, v) and every
  out-degree drops to q = max(2, ceil(m/n));
* weighted: balanced fan-out/fan-in trees of weight-0 edges split high
  out- and in-degrees down to the same q while preserving distances exactly.

A closed walk in the reduced graph maps back to one in the source graph by
reading off the original vertices it visits in order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParametersError, NotAClosedWalkError, ParseError
from .graph import DirectedGraph, from_arrays, read_graph, write_graph


@dataclass
class GadgetTree:
    """Rooted tree with all leaves at the same depth and bounded out-degree.

    For L leaves and arity q: at most 3L nodes, out-degree <= q, and every
    root-to-leaf path has length exactly ceil(log_q L). Node 0 is the root;
    ``leaves`` lists the leaf nodes left to right; ``first_leaf[v]`` is the
    index of the leftmost leaf under v (used to locate which original edges
    route through a node).
    """

    arity: int
    depth: int
    children: list[list[int]]
    leaves: list[int]
    first_leaf: list[int]

    @property
    def size(self) -> int:
        return len(self.children)

    def edges(self):
        for parent, kids in enumerate(self.children):
            for kid in kids:
                yield parent, kid


def build_gadget_tree(leaves: int, arity: int) -> GadgetTree:
    """Build the uniform-depth tree for ``leaves`` leaves at the given arity."""
    if leaves < 1:
        raise InvalidParametersError(f"need >= 1 leaf, got {leaves}")
    if arity < 2:
        raise InvalidParametersError(f"arity must be >= 2, got {arity}")

    depth = 0
    cap = 1
    while cap < leaves:
        cap *= arity
        depth += 1

    children: list[list[int]] = []
    leaf_list: list[int] = []
    first_leaf: list[int] = []

    def new_node() -> int:
        children.append([])
        first_leaf.append(len(leaf_list))
        return len(children) - 1

    def grow(node: int, count: int, d: int) -> None:
        # node becomes the root of a subtree with `count` leaves, all at depth d
        if d == 0:
            leaf_list.append(node)
            return
        block = arity ** (d - 1)
        full, rest = divmod(count, block)
        for _ in range(full):
            kid = new_node()
            children[node].append(kid)
            grow(kid, block, d - 1)
        if rest:
            kid = new_node()
            children[node].append(kid)
            grow(kid, rest, d - 1)

    root = new_node()
    grow(root, leaves, depth)
    return GadgetTree(arity=arity, depth=depth, children=children,
                      leaves=leaf_list, first_leaf=first_leaf)


@dataclass
class ReducedGraph:
    """A degree-reduced graph plus everything needed to map results back."""

    graph: DirectedGraph
    source: DirectedGraph
    n_original: int
    scale: int                 # distances in graph = scale * source distances
    kind: str                  # "unweighted" | "weighted"
    edge_origin: np.ndarray    # per aux vertex: representative source edge id

    def is_original(self, v: int) -> bool:
        return v < self.n_original

    @property
    def aux_count(self) -> int:
        return self.graph.n - self.n_original


def _arity(g: DirectedGraph) -> int:
    if g.n == 0:
        return 2
    return max(2, -(-g.m // g.n))


def reduce_unweighted(g: DirectedGraph, side: str = "out") -> ReducedGraph:
    """Uniform t-scaling out-degree reduction for unweighted graphs.

    Every edge becomes a path of exactly t = ceil(log_q n) unit edges, so
    girth and all distances scale by t and every out-degree is at most
    q = max(2, ceil(m/n)). ``side="in"`` runs the mirror construction on the
    transpose, bounding in-degrees instead.
    """
    if g.weighted:
        raise InvalidParametersError("unweighted reduction needs a unit-weight graph")
    if side not in ("out", "in"):
        raise InvalidParametersError(f"side must be 'out' or 'in', got {side!r}")
    if side == "in":
        rev = reduce_unweighted(g.reverse(), side="out")
        return ReducedGraph(
            graph=rev.graph.reverse(),
            source=g,
            n_original=rev.n_original,
            scale=rev.scale,
            kind=rev.kind,
            edge_origin=rev.edge_origin,
        )

    q = _arity(g)
    t = max(1, math.ceil(math.log(max(g.n, 2)) / math.log(q)))

    tails: list[int] = []
    heads: list[int] = []
    aux_origin: list[int] = []
    next_aux = g.n
    tree_cache: dict[int, GadgetTree] = {}

    for u in range(g.n):
        deg = g.out_degree(u)
        if deg == 0:
            continue
        base_eid = int(g.out_offsets[u])
        targets = g.out_heads[base_eid:base_eid + deg]

        nleaves = -(-deg // q)
        tree = tree_cache.get(nleaves)
        if tree is None:
            tree = tree_cache[nleaves] = build_gadget_tree(nleaves, q)
        d = tree.depth + 1      # neighbor depth below the tree root
        pad = t - d
        assert pad >= 0, "tree deeper than the uniform path length"

        node_id = [0] * tree.size
        for tn in range(tree.size):
            if tn == 0 and pad == 0:
                node_id[tn] = u
            else:
                node_id[tn] = next_aux
                rep = base_eid + min(tree.first_leaf[tn] * q, deg - 1)
                aux_origin.append(rep)
                next_aux += 1

        prev = u
        for step in range(pad):
            if step == pad - 1:
                nxt = node_id[0]
            else:
                nxt = next_aux
                aux_origin.append(base_eid)
                next_aux += 1
            tails.append(prev)
            heads.append(nxt)
            prev = nxt

        for parent, kid in tree.edges():
            tails.append(node_id[parent])
            heads.append(node_id[kid])
        for li, leaf in enumerate(tree.leaves):
            for v in targets[li * q:(li + 1) * q]:
                tails.append(node_id[leaf])
                heads.append(int(v))

    n_total = next_aux
    reduced = from_arrays(n_total, tails, heads,
                          np.ones(len(tails), dtype=np.int64),
                          weighted=False)
    return ReducedGraph(graph=reduced, source=g, n_original=g.n, scale=t,
                        kind="unweighted",
                        edge_origin=np.array(aux_origin, dtype=np.int64))


def reduce_weighted(g: DirectedGraph) -> ReducedGraph:
    """Distance-exact degree reduction via weight-0 fan-out/fan-in trees.

    Both the in- and the out-degree of every output vertex are at most
    q = max(2, ceil(m/n)); distances between original vertices are unchanged
    (scale 1). Edge weights ride on the hop next to the original endpoint,
    every other tree edge weighs 0 and is flagged auxiliary.
    """
    q = _arity(g)
    src_tails, src_heads = g.edge_endpoints()

    tails: list[int] = []
    heads: list[int] = []
    weights: list[int] = []
    reps: list[int] = []       # representative source edge id per edge
    aux_origin: list[int] = []
    next_aux = g.n

    # fan-out phase
    for u in range(g.n):
        deg = g.out_degree(u)
        base = int(g.out_offsets[u])
        hs, ws = g.out_edges(u)
        ports = [(int(hs[i]), int(ws[i]), base + i) for i in range(deg)]
        if deg > q:
            while len(ports) > q:
                grouped = []
                for lo in range(0, len(ports), q):
                    chunk = ports[lo:lo + q]
                    a = next_aux
                    rep = min(r for (_, _, r) in chunk)
                    aux_origin.append(rep)
                    next_aux += 1
                    for tgt, w, r in chunk:
                        tails.append(a)
                        heads.append(tgt)
                        weights.append(w)
                        reps.append(r)
                    grouped.append((a, 0, rep))
                ports = grouped
        for tgt, w, r in ports:
            tails.append(u)
            heads.append(tgt)
            weights.append(w)
            reps.append(r)

    # fan-in phase, only original heads can exceed q here
    by_head: dict[int, list[int]] = {}
    for idx, h in enumerate(heads):
        if h < g.n:
            by_head.setdefault(h, []).append(idx)
    for v in sorted(by_head):
        members = by_head[v]
        if len(members) <= q:
            continue
        ports = []
        for lo in range(0, len(members), q):
            chunk = members[lo:lo + q]
            b = next_aux
            rep = min(reps[i] for i in chunk)
            aux_origin.append(rep)
            next_aux += 1
            for i in chunk:
                heads[i] = b
            ports.append((b, rep))
        while len(ports) > q:
            grouped = []
            for lo in range(0, len(ports), q):
                chunk = ports[lo:lo + q]
                b = next_aux
                rep = min(r for (_, r) in chunk)
                aux_origin.append(rep)
                next_aux += 1
                for src, r in chunk:
                    tails.append(src)
                    heads.append(b)
                    weights.append(0)
                    reps.append(r)
                grouped.append((b, rep))
            ports = grouped
        for src, r in ports:
            tails.append(src)
            heads.append(v)
            weights.append(0)
            reps.append(r)

    w_arr = np.array(weights, dtype=np.int64)
    reduced = from_arrays(next_aux, tails, heads, w_arr, weighted=True,
                          aux_mask=w_arr == 0, allow_zero=True)
    return ReducedGraph(graph=reduced, source=g, n_original=g.n, scale=1,
                        kind="weighted",
                        edge_origin=np.array(aux_origin, dtype=np.int64))


def lift_cycle(rg: ReducedGraph, walk: list[int]) -> tuple[list[int], int]:
    """Map a closed walk of the reduced graph back to the source graph.

    Reads off the original vertices the walk visits in order; consecutive
    ones are joined by a source edge by construction. Returns the lifted
    walk and its total source weight. Raises NotAClosedWalkError if the
    input is not a closed walk of the reduced graph or visits no original
    vertex.
    """
    if not walk:
        raise NotAClosedWalkError("empty vertex sequence")
    rgraph = rg.graph
    for i, u in enumerate(walk):
        v = walk[(i + 1) % len(walk)]
        if rgraph.edge_weight(int(u), int(v)) is None:
            raise NotAClosedWalkError(
                f"no edge ({u}, {v}) in the reduced graph")

    originals = [int(v) for v in walk if v < rg.n_original]
    if not originals:
        raise NotAClosedWalkError("walk never visits an original vertex")

    total = 0
    for i, a in enumerate(originals):
        b = originals[(i + 1) % len(originals)]
        w = rg.source.edge_weight(a, b)
        if w is None:
            raise NotAClosedWalkError(
                f"consecutive originals ({a}, {b}) are not a source edge")
        total += w
    return originals, total


# -- serialization -----------------------------------------------------------


def write_reduced(rg: ReducedGraph, graph_path, map_path) -> None:
    """Graph file with scale/original-count header comments, plus a sidecar
    mapping each auxiliary vertex to a representative source edge id."""
    write_graph(rg.graph, graph_path, comments=[
        f"kind {rg.kind}",
        f"scale {rg.scale}",
        f"original {rg.n_original}",
    ])
    lines = ["c auxiliary vertex -> representative source edge id"]
    for i, eid in enumerate(rg.edge_origin.tolist()):
        lines.append(f"map {rg.n_original + i} {eid}")
    with open(map_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_reduced(graph_path, map_path,
                 source: DirectedGraph | None = None) -> ReducedGraph:
    """Read a reduced graph and its sidecar back.

    ``source`` is needed again for cycle lifting; structural fields load
    without it.
    """
    kind = None
    scale = None
    n_original = None
    with open(graph_path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            tok = raw.split()
            if not tok or tok[0] != "c":
                continue
            if len(tok) == 3 and tok[1] in ("kind", "scale", "original"):
                if tok[1] == "kind":
                    kind = tok[2]
                elif tok[1] == "scale":
                    scale = int(tok[2])
                else:
                    n_original = int(tok[2])
    if kind not in ("unweighted", "weighted") or scale is None or n_original is None:
        raise ParseError(1, "missing kind/scale/original header comments")

    graph = read_graph(graph_path, _allow_zero=True)

    origin: dict[int, int] = {}
    with open(map_path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            tok = raw.split()
            if not tok or tok[0] == "c":
                continue
            if tok[0] != "map" or len(tok) != 3:
                raise ParseError(lineno, f"bad map line {raw.strip()!r}")
            try:
                origin[int(tok[1])] = int(tok[2])
            except ValueError:
                raise ParseError(lineno, f"non-integer map field")
    aux_count = graph.n - n_original
    edge_origin = np.zeros(aux_count, dtype=np.int64)
    for v, eid in origin.items():
        if not n_original <= v < graph.n:
            raise ParseError(1, f"map entry {v} is not an auxiliary vertex")
        edge_origin[v - n_original] = eid

    if source is None:
        source = graph  # placeholder; lifting requires the real source
    return ReducedGraph(graph=graph, source=source, n_original=n_original,
                        scale=scale, kind=kind, edge_origin=edge_origin)
