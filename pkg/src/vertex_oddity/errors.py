class SizingError(ValueError):
    """Requested enumeration or sector is larger than the configured cap."""


class DomainError(ValueError):
    """Argument outside the domain where a quantity is defined."""


class FitError(ValueError):
    """Least-squares design is rank deficient."""


class SolverError(RuntimeError):
    """Iterative eigensolver did not reach the requested residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NeelViolation(AssertionError):
    """The maximal configuration is not one of the Néel-type words."""
