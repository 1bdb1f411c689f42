"""Exception hierarchy.

Everything raised on purpose derives from :class:`GirthlabError`. Input
problems additionally derive from :class:`ValueError` so callers that only
know the builtin hierarchy still catch them.
"""
from __future__ import annotations


class GirthlabError(Exception):
    pass


# graph construction -------------------------------------------------------

class GraphError(GirthlabError, ValueError):
    pass


class SelfLoop(GraphError):
    def __init__(self, u: int):
        super().__init__(f"self-loop at vertex {u}")
        self.u = u


class Digon(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"digon: both ({u},{v}) and ({v},{u}) present")
        self.u, self.v = u, v


class DuplicateEdge(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"duplicate edge ({u},{v})")
        self.u, self.v = u, v


class VertexOutOfRange(GraphError):
    def __init__(self, v: int, n: int):
        super().__init__(f"vertex {v} outside [0, {n})")
        self.v, self.n = v, n


class DigonOffsetPair(GraphError):
    def __init__(self, s: int, n: int):
        super().__init__(f"offsets {s} and {n - s} together create digons mod {n}")
        self.s, self.n = s, n


class InfeasibleDegree(GraphError):
    pass


class ParseError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# hypotheses of the analysed statements ------------------------------------

class HypothesisViolated(GirthlabError, ValueError):
    def __init__(self, message: str, vertex: int | None = None):
        super().__init__(message)
        self.vertex = vertex


class NotOutregular(HypothesisViolated):
    pass


class NotMFree(HypothesisViolated):
    def __init__(self, m: int, witness=None):
        length = witness.length if witness is not None else None
        super().__init__(f"digraph has a directed cycle of length {length} <= m={m}")
        self.m = m
        self.witness = witness


class GammaZero(GirthlabError, ValueError):
    pass


class TooLarge(GirthlabError, ValueError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"n={n} exceeds exact-solver limit {limit}")
        self.n, self.limit = n, limit


class TauOverHalf(GirthlabError, ValueError):
    pass


# cycle finder -------------------------------------------------------------

class DenseSubgraph(GirthlabError):
    """Every vertex of an expansion subgraph beats the outdegree cap.

    Not a failure: the caller recurses on ``vertices``.
    """

    def __init__(self, vertices: frozenset[int], cap: float):
        super().__init__(f"dense induced subgraph on {len(vertices)} vertices (cap {cap:.6g})")
        self.vertices = vertices
        self.cap = cap


class InternalContradiction(GirthlabError, RuntimeError):
    pass


# numerics -----------------------------------------------------------------

class OutOfRange(GirthlabError, ValueError):
    pass


class DegenerateDenominator(GirthlabError, ZeroDivisionError):
    pass


class GridTooCoarse(GirthlabError):
    def __init__(self, grid: int, worst_upper: float):
        super().__init__(
            f"grid of {grid} points cannot cover every gap (worst upper bound {worst_upper:.3e}); "
            "increase the resolution"
        )
        self.grid = grid
        self.worst_upper = worst_upper
