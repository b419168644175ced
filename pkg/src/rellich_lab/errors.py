"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a routine."""


class UnsupportedCaseError(ValueError):
    """The requested combination of parameters is excluded by design."""


class DegenerateInputError(ValueError):
    """A quotient was requested for a profile with vanishing denominator."""


class NumericalError(RuntimeError):
    """A numerical routine failed to reach its target accuracy."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ConvergenceError(NumericalError):
    """Adaptive quadrature exhausted its subdivision budget."""
