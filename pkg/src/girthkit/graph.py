"""Directed graphs in compressed adjacency form, plus generators and file I/O.

Vertices are dense ints ``0..n-1``. Edges are stored once, in canonical order
(sorted by tail, then head); the position in that order is the edge id used
everywhere else (spanner provenance, reduction sidecars). Both adjacency
directions are kept so reverse searches cost the same as forward ones.

Weights are positive ints. Weight 0 is reserved for auxiliary edges
introduced by the degree/weight transforms and must be flagged as such at
construction time; plain user input never contains it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import (
    DuplicateEdgeError,
    InvalidParametersError,
    NonPositiveWeightError,
    ParseError,
    SelfLoopError,
    VertexOutOfRangeError,
)
from .rng import stream


@dataclass
class DirectedGraph:
    """Immutable directed graph with int weights in CSR form, both directions."""

    n: int
    out_offsets: np.ndarray  # int64, n+1
    out_heads: np.ndarray    # int64, m, sorted within each tail slice
    out_weights: np.ndarray  # int64, m
    in_offsets: np.ndarray
    in_tails: np.ndarray
    in_weights: np.ndarray
    in_edge_ids: np.ndarray  # edge id of each in-entry
    weighted: bool
    aux_edges: np.ndarray | None = None  # bool mask over edge ids, None = none
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def m(self) -> int:
        return int(self.out_heads.shape[0])

    @property
    def max_weight(self) -> int:
        """Largest edge weight (1 for unweighted or empty graphs)."""
        if self.m == 0 or not self.weighted:
            return 1
        return int(self.out_weights.max())

    def out_edges(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Views of (heads, weights) leaving ``v``, heads ascending."""
        a, b = self.out_offsets[v], self.out_offsets[v + 1]
        return self.out_heads[a:b], self.out_weights[a:b]

    def in_edges(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        a, b = self.in_offsets[v], self.in_offsets[v + 1]
        return self.in_tails[a:b], self.in_weights[a:b]

    def out_degree(self, v: int) -> int:
        return int(self.out_offsets[v + 1] - self.out_offsets[v])

    def in_degree(self, v: int) -> int:
        return int(self.in_offsets[v + 1] - self.in_offsets[v])

    def edge_id(self, u: int, v: int) -> int | None:
        """Edge id of (u, v), or None if absent."""
        a, b = self.out_offsets[u], self.out_offsets[u + 1]
        pos = int(np.searchsorted(self.out_heads[a:b], v))
        if pos < b - a and self.out_heads[a + pos] == v:
            return int(a + pos)
        return None

    def edge_weight(self, u: int, v: int) -> int | None:
        eid = self.edge_id(u, v)
        return None if eid is None else int(self.out_weights[eid])

    def edge_endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        """(tails, heads) arrays in edge-id order."""
        tails = np.repeat(np.arange(self.n, dtype=np.int64),
                          np.diff(self.out_offsets))
        return tails, self.out_heads

    def is_aux_edge(self, eid: int) -> bool:
        return self.aux_edges is not None and bool(self.aux_edges[eid])

    # -- scipy views, built lazily ------------------------------------------

    def csr(self) -> sp.csr_matrix:
        """Forward adjacency as scipy CSR; explicit zeros kept as edges."""
        if "csr" not in self._cache:
            self._cache["csr"] = sp.csr_matrix(
                (self.out_weights.astype(np.float64), self.out_heads,
                 self.out_offsets),
                shape=(self.n, self.n),
            )
        return self._cache["csr"]

    def csr_reverse(self) -> sp.csr_matrix:
        if "csr_rev" not in self._cache:
            self._cache["csr_rev"] = sp.csr_matrix(
                (self.in_weights.astype(np.float64), self.in_tails,
                 self.in_offsets),
                shape=(self.n, self.n),
            )
        return self._cache["csr_rev"]

    def reverse(self) -> "DirectedGraph":
        """The graph with every edge flipped (weights and flags carried)."""
        if "reverse" not in self._cache:
            tails, heads = self.edge_endpoints()
            aux = None
            if self.aux_edges is not None:
                aux = self.aux_edges
            rev = _assemble(self.n, heads, tails, self.out_weights,
                            self.weighted,
                            aux_mask=aux, allow_zero=True)
            self._cache["reverse"] = rev
        return self._cache["reverse"]

    def same_as(self, other: "DirectedGraph") -> bool:
        """Structural equality: vertices, edges, weights, weightedness."""
        return (
            self.n == other.n
            and self.weighted == other.weighted
            and self.m == other.m
            and bool(np.array_equal(self.out_offsets, other.out_offsets))
            and bool(np.array_equal(self.out_heads, other.out_heads))
            and bool(np.array_equal(self.out_weights, other.out_weights))
        )


def _assemble(n, tails, heads, weights, weighted, aux_mask=None,
              allow_zero=False) -> DirectedGraph:
    """Validate, sort into canonical order, and build both CSR directions."""
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    m = tails.shape[0]

    if m:
        for arr in (tails, heads):
            bad = np.where((arr < 0) | (arr >= n))[0]
            if bad.size:
                raise VertexOutOfRangeError(int(arr[bad[0]]), n)
        loops = np.where(tails == heads)[0]
        if loops.size:
            raise SelfLoopError(int(tails[loops[0]]))

        order = np.lexsort((heads, tails))
        tails, heads, weights = tails[order], heads[order], weights[order]
        if aux_mask is not None:
            aux_mask = np.asarray(aux_mask, dtype=bool)[order]

        dup = np.where((np.diff(tails) == 0) & (np.diff(heads) == 0))[0]
        if dup.size:
            raise DuplicateEdgeError(int(tails[dup[0]]), int(heads[dup[0]]))

        floor = 0 if allow_zero else 1
        low = np.where(weights < floor)[0]
        if low.size:
            i = low[0]
            raise NonPositiveWeightError(int(tails[i]), int(heads[i]),
                                         int(weights[i]))
        if allow_zero:
            # even on trusted paths, zero weight requires the aux flag
            zero = weights == 0
            if zero.any() and (aux_mask is None or not aux_mask[zero].all()):
                i = int(np.where(zero)[0][0])
                raise NonPositiveWeightError(int(tails[i]), int(heads[i]), 0)

    out_offsets = np.zeros(n + 1, dtype=np.int64)
    np.add.at(out_offsets, tails + 1, 1)
    np.cumsum(out_offsets, out=out_offsets)

    in_order = np.lexsort((tails, heads))
    in_tails = tails[in_order]
    in_weights = weights[in_order]
    in_edge_ids = np.arange(m, dtype=np.int64)[in_order]
    in_offsets = np.zeros(n + 1, dtype=np.int64)
    np.add.at(in_offsets, heads + 1, 1)
    np.cumsum(in_offsets, out=in_offsets)

    if aux_mask is not None and not aux_mask.any():
        aux_mask = None

    return DirectedGraph(
        n=n,
        out_offsets=out_offsets,
        out_heads=heads,
        out_weights=weights,
        in_offsets=in_offsets,
        in_tails=in_tails,
        in_weights=in_weights,
        in_edge_ids=in_edge_ids,
        weighted=weighted,
        aux_edges=aux_mask,
    )


def build_graph(edges, n: int, weighted: bool | None = None) -> DirectedGraph:
    """Build a graph from ``(tail, head)`` or ``(tail, head, weight)`` triples.

    ``weighted`` defaults to whether any triple carries a weight; pairs in a
    weighted graph get weight 1. Rejects self-loops, duplicate edges,
    out-of-range vertices and weights < 1.
    """
    if n < 0:
        raise InvalidParametersError(f"n must be >= 0, got {n}")
    tails, heads, weights = [], [], []
    saw_weight = False
    for e in edges:
        if len(e) == 2:
            t, h = e
            w = 1
        elif len(e) == 3:
            t, h, w = e
            saw_weight = True
        else:
            raise InvalidParametersError(f"edge tuple of length {len(e)}")
        tails.append(t)
        heads.append(h)
        weights.append(w)
    if weighted is None:
        weighted = saw_weight
    return _assemble(n, tails, heads, weights, weighted)


def from_arrays(n, tails, heads, weights, weighted, aux_mask=None,
                allow_zero=False) -> DirectedGraph:
    """Array-based constructor for transforms and generators.

    Same validation as :func:`build_graph` except that ``allow_zero`` admits
    weight-0 edges, and only where ``aux_mask`` flags them.
    """
    return _assemble(n, tails, heads, weights, weighted, aux_mask=aux_mask,
                     allow_zero=allow_zero)


# -- strongly connected components ------------------------------------------


@dataclass
class SccDecomposition:
    """Partition of the vertices into strongly connected components."""

    component_of: np.ndarray        # int64, n
    components: list[np.ndarray]    # sorted vertex arrays, one per component

    @property
    def count(self) -> int:
        return len(self.components)


def scc(g: DirectedGraph) -> SccDecomposition:
    """Tarjan's algorithm, iterative so deep graphs don't hit the recursion cap."""
    n = g.n
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    comp = np.full(n, -1, dtype=np.int64)
    stack: list[int] = []
    next_index = 0
    comp_count = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # frame: (vertex, next out-edge position)
        work = [(root, g.out_offsets[root])]
        index[root] = low[root] = next_index
        next_index += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, ptr = work[-1]
            if ptr < g.out_offsets[v + 1]:
                work[-1] = (v, ptr + 1)
                w = int(g.out_heads[ptr])
                if index[w] == -1:
                    index[w] = low[w] = next_index
                    next_index += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, g.out_offsets[w]))
                elif on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = comp_count
                        if w == v:
                            break
                    comp_count += 1

    members: list[list[int]] = [[] for _ in range(comp_count)]
    for v in range(n):
        members[comp[v]].append(v)
    components = [np.array(sorted(ms), dtype=np.int64) for ms in members]
    return SccDecomposition(component_of=comp, components=components)


def induced_subgraph(g: DirectedGraph, vertices) -> tuple[DirectedGraph, np.ndarray]:
    """Subgraph induced by ``vertices``; returns it plus old-id-of-new-id map."""
    old = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if old.size and (old[0] < 0 or old[-1] >= g.n):
        raise VertexOutOfRangeError(int(old[0] if old[0] < 0 else old[-1]), g.n)
    new_of_old = np.full(g.n, -1, dtype=np.int64)
    new_of_old[old] = np.arange(old.size, dtype=np.int64)
    tails, heads = g.edge_endpoints()
    keep = (new_of_old[tails] >= 0) & (new_of_old[heads] >= 0)
    aux = g.aux_edges[keep] if g.aux_edges is not None else None
    sub = _assemble(
        int(old.size),
        new_of_old[tails[keep]],
        new_of_old[heads[keep]],
        g.out_weights[keep],
        g.weighted,
        aux_mask=aux,
        allow_zero=True,
    )
    return sub, old


# -- generators --------------------------------------------------------------


def _draw_weights(count: int, weights: str, max_weight: int | None,
                  rng) -> tuple[np.ndarray, bool]:
    if weights == "unit":
        return np.ones(count, dtype=np.int64), False
    if weights == "uniform":
        if max_weight is None or max_weight < 1:
            raise InvalidParametersError(
                "uniform weights need max_weight >= 1")
        return rng.integers(1, max_weight + 1, size=count,
                            dtype=np.int64), True
    raise InvalidParametersError(f"unknown weights model {weights!r}")


def directed_gnm(n: int, m: int, *, weights: str = "unit",
                 max_weight: int | None = None, seed: int = 0) -> DirectedGraph:
    """Uniform random simple digraph with exactly ``m`` distinct edges."""
    if n < 1:
        raise InvalidParametersError(f"gnm needs n >= 1, got {n}")
    npairs = n * (n - 1)
    if not 0 <= m <= npairs:
        raise InvalidParametersError(
            f"gnm with n={n} admits 0..{npairs} edges, got {m}")
    rng = stream(seed, "gen", "gnm", n, m)
    if m > npairs // 2:
        idx = rng.permutation(npairs)[:m]
    else:
        chosen: set[int] = set()
        while len(chosen) < m:
            need = m - len(chosen)
            chosen.update(int(x) for x in rng.integers(0, npairs, size=2 * need))
            while len(chosen) > m:
                chosen.pop()
        idx = np.array(sorted(chosen), dtype=np.int64)
    tails = idx // (n - 1) if n > 1 else np.zeros(0, dtype=np.int64)
    rem = idx % (n - 1) if n > 1 else idx
    heads = rem + (rem >= tails)
    w, weighted = _draw_weights(m, weights, max_weight, rng)
    return _assemble(n, tails, heads, w, weighted)


def directed_cycle(n: int, *, weights: str = "unit",
                   max_weight: int | None = None, seed: int = 0) -> DirectedGraph:
    """The single cycle 0 -> 1 -> ... -> n-1 -> 0 (n >= 2)."""
    if n < 2:
        raise InvalidParametersError(f"cycle needs n >= 2, got {n}")
    rng = stream(seed, "gen", "cycle", n)
    tails = np.arange(n, dtype=np.int64)
    heads = (tails + 1) % n
    w, weighted = _draw_weights(n, weights, max_weight, rng)
    return _assemble(n, tails, heads, w, weighted)


def layered_cycle(n: int, k: int, *, weights: str = "unit",
                  max_weight: int | None = None, seed: int = 0) -> DirectedGraph:
    """Ring plus skip chords where every edge advances the layer v mod k by one.

    Needs k >= 2, k | n, n >= 2k. Every cycle length is then a multiple of k,
    which makes these useful stress instances for length-divisibility effects.
    """
    if k < 2:
        raise InvalidParametersError(f"layered cycle needs k >= 2, got {k}")
    if n < 2 * k or n % k != 0:
        raise InvalidParametersError(
            f"layered cycle needs n >= 2k and k | n, got n={n}, k={k}")
    rng = stream(seed, "gen", "layered", n, k)
    ring = np.arange(n, dtype=np.int64)
    tails = np.concatenate([ring, ring])
    heads = np.concatenate([(ring + 1) % n, (ring + 1 + k) % n])
    w, weighted = _draw_weights(2 * n, weights, max_weight, rng)
    return _assemble(n, tails, heads, w, weighted)


def bidirected_grid(rows: int, cols: int, *, weights: str = "unit",
                    max_weight: int | None = None, seed: int = 0) -> DirectedGraph:
    """rows x cols grid with both directions of every 4-neighbor edge."""
    if rows < 1 or cols < 1:
        raise InvalidParametersError(
            f"grid needs rows, cols >= 1, got {rows}x{cols}")
    rng = stream(seed, "gen", "grid", rows, cols)
    tails, heads = [], []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                tails += [v, v + 1]
                heads += [v + 1, v]
            if r + 1 < rows:
                tails += [v, v + cols]
                heads += [v + cols, v]
    m = len(tails)
    w, weighted = _draw_weights(m, weights, max_weight, rng)
    return _assemble(rows * cols, np.array(tails, dtype=np.int64),
                     np.array(heads, dtype=np.int64), w, weighted)


_FAMILIES = {
    "gnm": directed_gnm,
    "cycle": directed_cycle,
    "layered": layered_cycle,
    "grid": bidirected_grid,
}


def generate(family: str, *, weights: str = "unit",
             max_weight: int | None = None, seed: int = 0,
             **params) -> DirectedGraph:
    """Dispatch to a generator family by name (gnm, cycle, layered, grid)."""
    try:
        fn = _FAMILIES[family]
    except KeyError:
        raise InvalidParametersError(
            f"unknown family {family!r}; choose from {sorted(_FAMILIES)}")
    return fn(weights=weights, max_weight=max_weight, seed=seed, **params)


# -- text serialization ------------------------------------------------------
#
# Line-oriented UTF-8 with LF endings:
#   c <free text>              comment, ignored
#   p <n> <m> <w|u>            exactly one, before any edge line
#   e <tail> <head> [<weight>] weight mandatory iff the p line says w
# Vertices are 0-indexed. Writing emits edges in canonical edge-id order so
# equal graphs serialize to identical bytes.


def write_graph(g: DirectedGraph, path, comments: list[str] | None = None) -> None:
    tails, heads = g.edge_endpoints()
    lines = []
    for text in comments or []:
        lines.append(f"c {text}")
    kind = "w" if g.weighted else "u"
    lines.append(f"p {g.n} {g.m} {kind}")
    if g.weighted:
        for t, h, w in zip(tails, heads, g.out_weights):
            lines.append(f"e {t} {h} {w}")
    else:
        for t, h in zip(tails, heads):
            lines.append(f"e {t} {h}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_graph(path, *, _allow_zero: bool = False) -> DirectedGraph:
    """Parse a graph file; malformed input raises ParseError with the line.

    With ``_allow_zero`` (used by the reduction sidecar reader) zero-weight
    edges are accepted and flagged auxiliary.
    """
    header = None
    tails: list[int] = []
    heads: list[int] = []
    ws: list[int] = []
    lineno = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            tok = line.split()
            if tok[0] == "p":
                if header is not None:
                    raise ParseError(lineno, "second p line")
                if len(tok) != 4 or tok[3] not in ("w", "u"):
                    raise ParseError(lineno, f"bad p line {line!r}")
                try:
                    header = (int(tok[1]), int(tok[2]), tok[3] == "w")
                except ValueError:
                    raise ParseError(lineno, f"bad p line {line!r}")
                if header[0] < 0 or header[1] < 0:
                    raise ParseError(lineno, "negative n or m")
            elif tok[0] == "e":
                if header is None:
                    raise ParseError(lineno, "e line before p line")
                n, m, weighted = header
                want = 4 if weighted else 3
                if len(tok) != want:
                    raise ParseError(
                        lineno,
                        f"expected {want - 1} fields after 'e', got {len(tok) - 1}")
                try:
                    t, h = int(tok[1]), int(tok[2])
                    w = int(tok[3]) if weighted else 1
                except ValueError:
                    raise ParseError(lineno, f"non-integer field in {line!r}")
                if len(tails) == m:
                    raise ParseError(lineno, f"more than {m} edge lines")
                if not (0 <= t < n and 0 <= h < n):
                    raise ParseError(lineno, f"vertex out of range in {line!r}")
                if t == h:
                    raise ParseError(lineno, f"self-loop at {t}")
                floor = 0 if _allow_zero else 1
                if w < floor:
                    raise ParseError(lineno, f"weight {w} below {floor}")
                tails.append(t)
                heads.append(h)
                ws.append(w)
            else:
                raise ParseError(lineno, f"unknown record {tok[0]!r}")
    if header is None:
        raise ParseError(lineno + 1, "missing p line")
    n, m, weighted = header
    if len(tails) != m:
        raise ParseError(lineno + 1,
                         f"p line declared {m} edges, file has {len(tails)}")
    aux = None
    if _allow_zero:
        aux = np.array([w == 0 for w in ws], dtype=bool)
    try:
        return _assemble(n, tails, heads, ws, weighted, aux_mask=aux,
                         allow_zero=_allow_zero)
    except DuplicateEdgeError as exc:
        raise ParseError(lineno, str(exc))
