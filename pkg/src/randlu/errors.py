"""Exception types shared across the package.

ValueError-derived classes signal contract violations (bad shapes, bad
parameters, unreadable files) and map to CLI exit code 2.  NumericalError
and its subclasses signal runtime numerical failures and map to exit 3.
"""


class RandLUError(Exception):
    pass


class DimensionError(RandLUError, ValueError):
    """Operand shapes are incompatible with the requested operation."""


class ParameterError(RandLUError, ValueError):
    """A parameter violates its stated precondition."""


class FormatError(RandLUError, ValueError):
    """A file does not conform to its declared format."""


class NumericalError(RandLUError, RuntimeError):
    """Base class for runtime numerical failures."""


class RankCollapseError(NumericalError):
    """Detected numerical rank is below what the operation requires."""

    def __init__(self, message, achievable_rank=None):
        super().__init__(message)
        self.achievable_rank = achievable_rank


class SingularMatrixError(NumericalError):
    """A triangular or Gram system has a numerically zero pivot."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ConditioningError(NumericalError):
    """A normal-equations system is too ill-conditioned to solve."""


class ConvergenceError(NumericalError):
    """An iteration hit its cap before reaching the requested tolerance."""

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
