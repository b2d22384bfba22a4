"""Exception hierarchy shared by every module of the package."""


class MBoundError(Exception):
    """Base class for all errors raised by :mod:`mbound`."""


class DomainError(MBoundError, ValueError):
    """An argument lies outside the domain of the operation."""


class InfeasibleParameterError(DomainError):
    """Parameters admit no solution of the defining equation."""


class DegenerateInputError(DomainError):
    """Input sits on a degenerate boundary where a quotient is unstable."""


class NoSolutionError(MBoundError, ValueError):
    """A one-dimensional equation has no sign change on its domain."""


class ConvergenceError(MBoundError, RuntimeError):
    """An iterative method hit its iteration cap.

    ``bracket`` holds the best enclosing interval at the time of failure.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class QuadratureError(ConvergenceError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConsistencyError(MBoundError, RuntimeError):
    """Two computations that must agree (or bracket a root) do not."""

    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values


class SearchError(MBoundError, RuntimeError):
    """Randomized search could not produce admissible candidates."""


class FormatError(MBoundError, ValueError):
    """A serialized record is malformed."""
