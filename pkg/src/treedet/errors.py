"""Exception hierarchy shared by every module."""


class GraphError(ValueError):
    """Base class for invalid inputs and failed preconditions."""


class GuardRailError(GraphError):
    """An input exceeds a size limit (the CLI maps these to exit code 2)."""


class SelfLoop(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class RootQuery(GraphError):
    pass


class UnknownArc(GraphError):
    pass


class RootHasInArcs(GraphError):
    pass


class PreconditionSourceTarget(GraphError):
    """Source and target of the arc to move are strongly connected."""


class PreconditionNewSourceTarget(GraphError):
    """New source and target are strongly connected after the move."""


class NotParallel(GraphError):
    pass


class NotSquare(GraphError):
    pass


class NonNumericWeight(GraphError, TypeError):
    pass


class NoRootArc(GraphError):
    pass


class NotRooted(GraphError):
    pass


class UnboundVariable(GraphError):
    pass


class ExprParseError(GraphError):
    pass


class TooLarge(GuardRailError):
    pass


class ExpansionTooLarge(GuardRailError):
    pass
