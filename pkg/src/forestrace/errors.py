"""Exception hierarchy shared across the package."""


class ForestraceError(Exception):
    """Base class for all package errors."""


class GraphError(ForestraceError):
    pass


class NegativeWeight(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class ConflictingDuplicate(GraphError):
    pass


class DimensionMismatch(GraphError):
    pass


class ParseError(ForestraceError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FormatViolation(ForestraceError):
    pass


class SizeTooSmall(ForestraceError):
    pass


class BadParameters(ForestraceError):
    pass


class DuplicatePoints(ForestraceError):
    pass


class BadK(ForestraceError):
    pass


class NonPositiveQ(ForestraceError):
    pass


class ZeroReplicates(ForestraceError):
    pass


class MaxIterationsExceeded(ForestraceError):
    """CG ran out of iterations. Carries the best iterate found so far."""

    def __init__(self, message, x=None, iterations=None, residual=None):
        super().__init__(message)
        self.x = x
        self.iterations = iterations
        self.residual = residual


class TooLarge(ForestraceError):
    pass


class NotSymmetric(ForestraceError):
    pass


class NotDiagonallyDominant(ForestraceError):
    def __init__(self, row):
        self.row = row
        super().__init__(f"row {row} is not diagonally dominant")


class InternalInconsistency(ForestraceError):
    pass


class BisectionFailed(ForestraceError):
    pass


class ZeroMeanPilot(ForestraceError):
    pass
