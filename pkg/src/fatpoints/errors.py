"""Exception types shared across the package.

The CLI maps these onto exit codes: input problems exit with 2, budget
problems with 3 and invariant violations with 4.
"""


class FatPointsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(FatPointsError, ValueError):
    """Malformed or out-of-domain input (bad point, bad class, ...)."""


class BudgetExceededError(FatPointsError):
    """A search ran past its configured degree or iteration cap."""

    def __init__(self, message, reached=None, trace=None):
        super().__init__(message)
        self.reached = reached
        self.trace = trace or []


class FieldSizeError(FatPointsError, ValueError):
    """The chosen field has too few elements for the requested construction."""


class IncompleteCoverError(FatPointsError, ValueError):
    """Lines used for a reduction vector do not exhaust the multiplicities."""

    def __init__(self, message, survivors=()):
        super().__init__(message)
        self.survivors = list(survivors)


class ClassificationError(FatPointsError, ValueError):
    """A sequence fails the O-sequence conditions needed by a construction."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class ScopeError(FatPointsError, ValueError):
    """Request lies outside the range where the result is a theorem."""


class InvariantViolation(FatPointsError, AssertionError):
    """An internal consistency check failed."""
