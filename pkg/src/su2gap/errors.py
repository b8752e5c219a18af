"""Exception types shared across the package."""


class DomainError(ValueError):
    """Requested coordinates lie outside the realizable region (D or Omega)."""


class ConvergenceError(RuntimeError):
    """An iterative eigenvalue computation exhausted its budget.

    Carries the irrep level at which the failure occurred when known.
    """

    def __init__(self, message: str, level: int | None = None):
        super().__init__(message)
        self.level = level


class DegenerateFiberWarning(UserWarning):
    """The fiber being sampled collapses to a single conjugacy class."""
