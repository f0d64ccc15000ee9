"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ColoringError(Exception):
    """Base class for all errors raised by pcfcolor."""


class InvalidEdge(ColoringError, ValueError):
    pass


class SelfLoop(ColoringError, ValueError):
    pass


class InvalidVertex(ColoringError, IndexError):
    pass


class InvalidColor(ColoringError, ValueError):
    pass


class InvalidOrder(ColoringError, ValueError):
    pass


class InvalidParameter(ColoringError, ValueError):
    pass


class NotClawFree(ColoringError):
    """The input has an induced claw; ``witness`` is ``(center, (a, b, c))``."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"graph contains an induced claw {witness}")


class NotQuasiLineAt(ColoringError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"neighborhood of vertex {vertex} is not a union of two cliques")


class AlgorithmInvariantViolated(ColoringError, RuntimeError):
    """A step that is guaranteed to succeed under the stated precondition failed.

    Signals either a misclassified input or a bug; never silently recovered.
    """


class InvalidLayout(ColoringError, ValueError):
    def __init__(self, message: str, vertex: int | None = None):
        self.vertex = vertex
        super().__init__(message)


class NotNested(ColoringError, ValueError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"members {pair[0]} and {pair[1]} intersect but are not nested")


class ImproperBase(ColoringError, ValueError):
    pass


class SideColorerContractViolated(ColoringError, RuntimeError):
    def __init__(self, message: str, subgraph_vertices=()):
        self.subgraph_vertices = tuple(subgraph_vertices)
        super().__init__(message)


class LayoutDerivationFailed(ColoringError, RuntimeError):
    def __init__(self, message: str, subgraph_vertices=()):
        self.subgraph_vertices = tuple(subgraph_vertices)
        super().__init__(message)


class NotConvexRound(ColoringError, ValueError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"neighborhood of vertex {vertex} is not an arc of the circular order")


class InvalidBaseColoring(ColoringError, ValueError):
    pass


class NotSpanningTree(ColoringError, ValueError):
    pass


class GraphNotConnected(ColoringError, ValueError):
    pass


class GenerationFailed(ColoringError, RuntimeError):
    pass


class Exhausted(ColoringError, RuntimeError):
    """The node budget ran out before the search could settle the question.

    ``lower_bound`` is the smallest palette size not yet ruled out.
    """

    def __init__(self, lower_bound: int, nodes_explored: int, budget: int):
        self.lower_bound = lower_bound
        self.nodes_explored = nodes_explored
        self.budget = budget
        super().__init__(
            f"node budget {budget} exhausted after {nodes_explored} nodes; "
            f"palettes below {lower_bound} are ruled out"
        )
