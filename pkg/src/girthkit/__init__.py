"""Randomized girth approximation and roundtrip spanners for directed graphs.

The package splits into a small stack of layers:

- :mod:`girthkit.graph`: compressed adjacency graphs, generators, file I/O.
- :mod:`girthkit.oracle`: exact brute-force girth, roundtrip distances, and
  spanner verification, kept deliberately simple to check everything else.
- :mod:`girthkit.transform`: gadget-tree degree reductions.
- :mod:`girthkit.sampling`: landmark tables and the filtered sample sets the
  pruned searches consult.
- :mod:`girthkit.unweighted`, :mod:`girthkit.weighted`,
  :mod:`girthkit.multilevel`: the factor 2, 2+eps, and 2k estimators plus
  the roundtrip spanner construction.
- :mod:`girthkit.hardness`: layered gap instances on which factors below 2
  require finding a shortest cycle outright.
- :mod:`girthkit.cli`: the ``girthkit`` command.

Every estimator returns a :class:`girthkit.results.GirthResult` whose
estimate equals the weight of the closed walk it carries as a witness.
"""

from __future__ import annotations

from .errors import (
    AcyclicGraphError,
    CapExceededError,
    ContractViolationError,
    DuplicateEdgeError,
    GirthkitError,
    GraphInputError,
    InvalidEpsilonError,
    InvalidKError,
    InvalidParametersError,
    NoSplitFoundError,
    NonPositiveWeightError,
    NotAClosedWalkError,
    NotASubgraphError,
    ParseError,
    SampleNotSubsetError,
    SelfLoopError,
    VertexOutOfRangeError,
)
from .graph import (
    DirectedGraph,
    SccDecomposition,
    bidirected_grid,
    build_graph,
    directed_cycle,
    directed_gnm,
    from_arrays,
    generate,
    induced_subgraph,
    layered_cycle,
    read_graph,
    scc,
    write_graph,
)
from .hardness import gap_instance, layer_by_colors
from .multilevel import (
    AlphaExponent,
    find_split_level,
    girth_approx_2k,
    girth_approx_strongpoly,
    solve_alpha,
)
from .oracle import (
    ORACLE_CAP,
    RoundtripMatrix,
    SpannerCheck,
    exact_girth,
    exact_roundtrip,
    verify_spanner,
)
from .results import INF, Guarantee, GirthResult, SpannerSubgraph, walk_weight
from .rng import fresh_seed, stream
from .sampling import DEFAULT_CONFIG, SamplingConfig, WorkCounters
from .transform import (
    GadgetTree,
    ReducedGraph,
    build_gadget_tree,
    lift_cycle,
    read_reduced,
    reduce_unweighted,
    reduce_weighted,
    write_reduced,
)
from .unweighted import girth_approx_unweighted, girth_from_sampled_sources
from .weighted import (
    ScaledInstance,
    band_index,
    build_roundtrip_spanner,
    cycle_weight_threshold,
    girth_approx_weighted,
    rescale_for_strong_polytime,
    spanner_for_stretch,
)

__version__ = "0.1.0"

__all__ = [
    "AcyclicGraphError",
    "AlphaExponent",
    "CapExceededError",
    "ContractViolationError",
    "DEFAULT_CONFIG",
    "DirectedGraph",
    "DuplicateEdgeError",
    "GadgetTree",
    "GirthResult",
    "GirthkitError",
    "GraphInputError",
    "Guarantee",
    "INF",
    "InvalidEpsilonError",
    "InvalidKError",
    "InvalidParametersError",
    "NoSplitFoundError",
    "NonPositiveWeightError",
    "NotAClosedWalkError",
    "NotASubgraphError",
    "ORACLE_CAP",
    "ParseError",
    "ReducedGraph",
    "RoundtripMatrix",
    "SampleNotSubsetError",
    "SamplingConfig",
    "ScaledInstance",
    "SccDecomposition",
    "SelfLoopError",
    "SpannerCheck",
    "SpannerSubgraph",
    "VertexOutOfRangeError",
    "WorkCounters",
    "band_index",
    "bidirected_grid",
    "build_gadget_tree",
    "build_graph",
    "build_roundtrip_spanner",
    "cycle_weight_threshold",
    "directed_cycle",
    "directed_gnm",
    "exact_girth",
    "exact_roundtrip",
    "find_split_level",
    "fresh_seed",
    "from_arrays",
    "gap_instance",
    "generate",
    "girth_approx_2k",
    "girth_approx_strongpoly",
    "girth_approx_unweighted",
    "girth_approx_weighted",
    "girth_from_sampled_sources",
    "induced_subgraph",
    "layer_by_colors",
    "layered_cycle",
    "lift_cycle",
    "read_graph",
    "read_reduced",
    "reduce_unweighted",
    "reduce_weighted",
    "rescale_for_strong_polytime",
    "scc",
    "solve_alpha",
    "spanner_for_stretch",
    "stream",
    "verify_spanner",
    "walk_weight",
    "write_graph",
    "write_reduced",
]
