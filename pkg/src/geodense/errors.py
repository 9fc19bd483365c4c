"""Exception hierarchy shared by every geodense module."""

from __future__ import annotations


class GeodenseError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 3


class UsageError(GeodenseError, ValueError):
    """Caller passed arguments outside an operation's contract."""

    exit_code = 2


class UnsupportedOrderError(UsageError):
    """Requested expansion order is outside the supported range."""


class NotInvertibleError(GeodenseError, ArithmeticError):
    pass


class SingularModelError(GeodenseError):
    """A warp factor of a model cannot be inverted."""


class RankDeficientError(GeodenseError):
    """Linear system for the universal constants has no unique solution.

    ``kernel`` holds a basis of the null space, one list of Fractions per vector.
    """

    def __init__(self, message: str, kernel=None):
        super().__init__(message)
        self.kernel = kernel or []


class InconsistentSystemError(GeodenseError):
    pass


class VerificationError(GeodenseError):
    exit_code = 1


class InvalidProfileError(VerificationError):
    """Eigenvalue profile violates the trace identities of its model density."""
