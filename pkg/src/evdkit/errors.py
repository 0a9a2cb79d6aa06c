"""Exception hierarchy shared by every evdkit module."""


class EvdkitError(Exception):
    """Base class for all evdkit errors."""


class DomainError(EvdkitError, ValueError):
    """Argument outside the mathematical domain of a function."""


class InvalidSpecError(DomainError):
    """Parameter vector outside the family's parameter space."""


class NonConvergenceError(EvdkitError, ArithmeticError):
    """An iterative numerical routine failed to converge."""


class DataError(EvdkitError, ValueError):
    """Input data unusable for the requested operation."""


class ParseError(DataError):
    """A data file could not be parsed."""


class InvariantError(DataError):
    """Parsed data violates a structural invariant."""


class InsufficientDataError(DataError):
    """Too few (or degenerate) observations."""
