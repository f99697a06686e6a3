"""Exception hierarchy shared by every module.

The CLI prints ``type(err).__name__`` verbatim, so class names are part of
the public surface.
"""


class TwCountError(Exception):
    """Base class for all domain errors."""


class GraphError(TwCountError):
    pass


class DecompositionError(TwCountError):
    pass


class VertexUncovered(DecompositionError):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} is in no bag")
        self.vertex = vertex


class EdgeUncovered(DecompositionError):
    def __init__(self, edge):
        u, v = edge
        super().__init__(f"edge {{{u},{v}}} has no bag containing both endpoints")
        self.edge = edge


class ConnectivityViolated(DecompositionError):
    def __init__(self, vertex):
        super().__init__(f"bags containing vertex {vertex} are not connected")
        self.vertex = vertex


class NotATree(DecompositionError):
    pass


class InvalidDecomposition(DecompositionError):
    pass


class WidthLimitExceeded(TwCountError):
    def __init__(self, width, limit):
        super().__init__(f"decomposition width {width} exceeds limit {limit}")
        self.width = width
        self.limit = limit


class OutDegreeExceedsN(GraphError):
    pass


class InvalidEndpoints(GraphError):
    pass


class NotMonic(TwCountError):
    pass


class EdgeLimitExceeded(TwCountError):
    def __init__(self, edges, limit):
        super().__init__(f"{edges} edges exceeds enumeration limit {limit}")
        self.edges = edges
        self.limit = limit


class SelfLoopUnsupported(GraphError):
    pass


class DimensionTooLarge(TwCountError):
    def __init__(self, size, limit, what="dimension"):
        super().__init__(f"{what} {size} exceeds oracle cap {limit}")
        self.size = size
        self.limit = limit


class ParseError(ValueError):
    """Malformed input file; not a domain error (the CLI maps it to exit 2)."""
