class TrotterDisorderError(Exception):
    """Base class of all errors raised by this package."""


class UsageError(TrotterDisorderError, ValueError):
    """Invalid arguments: mismatched sizes, indices out of range, bad config fields."""


class DomainError(TrotterDisorderError, ValueError):
    """Arguments valid in form but outside the mathematical domain of the operation."""


class NumericalError(TrotterDisorderError, RuntimeError):
    """A linear algebra routine failed."""
