"""Exception types shared across the package."""


class ConvergenceFailure(RuntimeError):
    """An iterative factorization exceeded its sweep budget."""


class RankOutOfRange(ValueError):
    """A rank or truncation parameter lies outside the valid range."""


class IndexOutOfRange(IndexError):
    """A row or column index does not fit the matrix dimensions."""


class NotSymmetric(ValueError):
    """A symmetric-only operation received a non-symmetric matrix."""


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""


class DegenerateStart(RuntimeError):
    """The greedy search could not find a starting block of rank >= 1."""


class NonPositiveValue(ValueError):
    """A spectrum value required to be positive is zero or negative."""


class InvalidDecayParams(ValueError):
    """Decay-model parameters are outside their admissible ranges."""
