"""Exception hierarchy shared by all solver modules."""


class ParavecError(Exception):
    """Base class for every error raised by paravec."""


class DimensionMismatch(ParavecError, ValueError):
    pass


class ConeNotPointed(ParavecError):
    pass


class ConeNotSolid(ParavecError):
    pass


class InteriorPointInvalid(ParavecError):
    pass


class DegenerateInteriorPoint(ParavecError):
    pass


class SingularMatrix(ParavecError, ArithmeticError):
    pass


class SingularBasis(SingularMatrix):
    pass


class NumericalBreakdown(ParavecError, ArithmeticError):
    pass


class PreconditionViolated(ParavecError):
    pass


class InfeasibleProblem(ParavecError):
    """The feasible set ``{x : Ax <= b, x >= 0}`` is empty."""


class NoSolution(ParavecError):
    """No maximizer exists: every interior weight gives an unbounded weighted-sum problem."""


class ScalarUnbounded(ParavecError):
    """The weighted-sum problem for the requested weight is unbounded."""


class UnsupportedDimension(ParavecError):
    pass


class ParseError(ParavecError, ValueError):
    pass


class TooLarge(ParavecError):
    pass
