"""Exception hierarchy.

The CLI maps these onto exit statuses: ``InputError`` -> 2,
``ResourceCapError`` -> 3, ``AssertionFailure`` -> 1.
"""

from __future__ import annotations


class ExtraLoopError(Exception):
    """Base class for all package errors."""


class InputError(ExtraLoopError, ValueError):
    """Malformed table, spec, or argument."""


class PreconditionError(InputError):
    """An operation was called on a loop outside its domain (e.g. not extra)."""


class NotNormalError(InputError):
    """Quotient requested by a subloop that is not normal."""


class AssertionFailure(ExtraLoopError):
    """A mathematical self-check failed on data that passed validation."""


class ConsistencyError(AssertionFailure):
    """Internal inconsistency; indicates a bug rather than bad input."""


class ResourceCapError(ExtraLoopError):
    """An enumeration exceeded its configured size cap.

    ``lower_bound`` is the number of objects found before giving up.
    """

    def __init__(self, message: str, lower_bound: int | None = None):
        super().__init__(message)
        self.lower_bound = lower_bound
