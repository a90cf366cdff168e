"""Exception types shared across the package.

Everything raised on purpose derives from :class:`GirthkitError`, so callers
(and the CLI) can tell our rejections apart from genuine bugs.
"""

from __future__ import annotations


class GirthkitError(Exception):
    """Base class for all errors raised by girthkit."""


class GraphInputError(GirthkitError):
    """Rejected graph construction input."""


class SelfLoopError(GraphInputError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"self-loop at vertex {vertex} is not allowed")


class DuplicateEdgeError(GraphInputError):
    def __init__(self, tail: int, head: int):
        self.tail = tail
        self.head = head
        super().__init__(f"duplicate edge ({tail}, {head})")


class NonPositiveWeightError(GraphInputError):
    def __init__(self, tail: int, head: int, weight: int):
        self.tail = tail
        self.head = head
        self.weight = weight
        super().__init__(
            f"edge ({tail}, {head}) has weight {weight}; "
            "weights must be >= 1 (zero is reserved for auxiliary edges)"
        )


class VertexOutOfRangeError(GraphInputError):
    def __init__(self, vertex: int, n: int):
        self.vertex = vertex
        self.n = n
        super().__init__(f"vertex {vertex} out of range for n={n}")


class InvalidParametersError(GirthkitError):
    """Generator or algorithm parameters outside their documented domain."""


class ParseError(GirthkitError):
    """Malformed graph file. Carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class CapExceededError(GirthkitError):
    """Requested exact computation beyond the configured size cap."""


class NotASubgraphError(GirthkitError):
    """Claimed spanner contains an edge the host graph does not have."""


class NotAClosedWalkError(GirthkitError):
    """Vertex sequence does not describe a closed walk of existing edges."""


class SampleNotSubsetError(GirthkitError):
    """Filter sample must be drawn from the set it is meant to shrink."""


class InvalidEpsilonError(InvalidParametersError):
    def __init__(self, eps: float):
        self.eps = eps
        super().__init__(f"epsilon must be positive, got {eps}")


class InvalidKError(InvalidParametersError):
    def __init__(self, k: int, minimum: int = 1):
        self.k = k
        super().__init__(f"k must be an integer >= {minimum}, got {k}")


class AcyclicGraphError(GirthkitError):
    """Operation needs at least one cycle but the graph has none."""


class NoSplitFoundError(GirthkitError):
    """No level satisfied the split inequality.

    Signals a precondition violation (the sizes cannot all grow faster than
    the guaranteed rate); surfaced to the caller, never swallowed.
    """


class ContractViolationError(GirthkitError):
    """A runtime self-check caught an internal contract violation."""
