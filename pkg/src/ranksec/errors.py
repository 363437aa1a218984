"""Exception types shared across the package."""


class RanksecError(Exception):
    """Base class for package errors."""


class BudgetExceeded(RanksecError):
    """An exhaustive scan would exceed the configured operation cap."""


class NotNestedError(RanksecError, ValueError):
    """C2 is not a proper subcode of C1."""


class TheoremViolation(RanksecError, AssertionError):
    """An invariant guaranteed by the theory failed to hold."""
