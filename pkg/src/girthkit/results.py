"""Result types shared by the exact and approximate girth computations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotAClosedWalkError
from .graph import DirectedGraph

INF = math.inf


@dataclass(frozen=True)
class Guarantee:
    """What the estimate promises: exact, or within a multiplicative factor.

    ``factor(math.inf)`` marks a bare upper bound (subroutine outputs whose
    quality claim lives with their caller).
    """

    kind: str           # "exact" | "factor"
    factor: float = 1.0

    @staticmethod
    def exact() -> "Guarantee":
        return Guarantee("exact", 1.0)

    @staticmethod
    def within(factor: float) -> "Guarantee":
        return Guarantee("factor", float(factor))

    def __str__(self) -> str:
        if self.kind == "exact":
            return "exact"
        return f"factor({self.factor:g})"

    def to_json(self):
        if self.kind == "exact":
            return {"kind": "exact"}
        return {"kind": "factor", "factor": self.factor}


@dataclass
class GirthResult:
    """Outcome of a girth computation.

    ``estimate`` is the weight of the best cycle found, or ``inf`` when the
    graph is acyclic. ``witness`` is a closed walk ``[v0, ..., v_{L-1}]``
    (edges ``v0->v1, ..., v_{L-1}->v0``) of exactly that weight whenever the
    estimate is finite; soundness of the randomized algorithms rests on only
    ever reporting weights of walks they concretely discovered.
    """

    estimate: float
    witness: list[int] | None
    guarantee: Guarantee
    algorithm: str
    seed: int | None = None

    @property
    def is_acyclic(self) -> bool:
        return self.estimate == INF

    def to_json(self):
        out = {
            "estimate": None if self.is_acyclic else int(self.estimate),
            "acyclic": self.is_acyclic,
            "guarantee": self.guarantee.to_json(),
            "witness": None if self.witness is None else [int(v) for v in self.witness],
            "algorithm": self.algorithm,
        }
        if self.seed is not None:
            out["seed"] = int(self.seed)
        return out


def walk_weight(g: DirectedGraph, walk: list[int]) -> int:
    """Total weight of the closed walk ``walk``; raises if an edge is missing."""
    if not walk:
        raise NotAClosedWalkError("empty vertex sequence")
    total = 0
    for i, u in enumerate(walk):
        v = walk[(i + 1) % len(walk)]
        w = g.edge_weight(int(u), int(v))
        if w is None:
            raise NotAClosedWalkError(f"no edge ({u}, {v}) in the graph")
        total += w
    return total


@dataclass
class SpannerSubgraph:
    """Edge subset of a host graph meant to preserve roundtrip distances.

    ``provenance`` names, for every kept edge, the search that first added it
    (landmark tree or pruned per-vertex search). ``declared_stretch`` is the
    factor the construction promises.
    """

    host: DirectedGraph
    edge_ids: np.ndarray            # sorted unique int64
    provenance: dict[int, str]
    declared_stretch: float
    eps: float
    seed: int | None = None

    @property
    def edge_count(self) -> int:
        return int(self.edge_ids.shape[0])

    def to_graph(self) -> DirectedGraph:
        """Materialize the kept edges as a graph on the host's vertex set."""
        from .graph import from_arrays

        tails, heads = self.host.edge_endpoints()
        ids = self.edge_ids
        aux = None
        if self.host.aux_edges is not None:
            aux = self.host.aux_edges[ids]
        return from_arrays(
            self.host.n,
            tails[ids],
            heads[ids],
            self.host.out_weights[ids],
            self.host.weighted,
            aux_mask=aux,
            allow_zero=True,
        )

    def provenance_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for tag in self.provenance.values():
            kind = tag.split("(", 1)[0].split(":", 1)[0]
            counts[kind] = counts.get(kind, 0) + 1
        return counts
