"""Exception types shared across the package.

The CLI maps these onto exit codes: invalid parameter domains -> 3,
quadrature non-convergence -> 4 (argument parsing errors exit 2).
"""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class SeparatrixError(DomainError):
    """Amplitude at or beyond the separatrix: the period diverges."""


class DegeneratePmsError(DomainError):
    """The stationarity condition degenerates (vanishing second-order coefficient)."""


class NoStationaryPointError(DomainError):
    """The stationarity condition has no solution with lambda^2 > 0."""


class UnphysicalResultError(DomainError):
    """A squared frequency came out non-positive for nominally valid inputs."""


class ConvergenceError(RuntimeError):
    """Quadrature failed to reach tolerance within the refinement budget.

    Carries the best available estimate and the last observed error bound.
    """

    def __init__(self, message, estimate, error_bound):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class StepLimitError(RuntimeError):
    """An integration would exceed the configured step cap."""


class EstimationError(RuntimeError):
    """A trajectory does not contain enough structure to estimate the period."""


class InternalConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    Raised when cross-checks built into the expansion pipeline fail; this
    signals an implementation bug, not a user error.
    """
