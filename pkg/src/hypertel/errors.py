"""Exception hierarchy for the library.

Every error raised by the library derives from :class:`HypertelError`, so
callers can catch a single class at the CLI boundary.
"""

from __future__ import annotations


class HypertelError(Exception):
    """Base class for all library errors."""


class DomainError(HypertelError):
    """An operation was called outside its mathematical domain."""


class NotInvertible(HypertelError):
    """A modular inverse does not exist; carries the offending gcd."""

    def __init__(self, message, gcd=None):
        super().__init__(message)
        self.gcd = gcd


class InvalidInputForm(HypertelError):
    """The input term is not of the supported shape (a reduction pivot
    vanished, signalling an integer-residue obstruction)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class PreconditionViolated(HypertelError):
    """A documented precondition of an algorithm failed at runtime."""


class NotInvertibleSeries(HypertelError):
    """A rational function has no compositional inverse as a power series."""


class ReportDegenerate(HypertelError):
    """Rejection sampling exhausted its redraw budget."""


class ExprSyntaxError(HypertelError):
    """Malformed expression text; carries the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownVariable(HypertelError):
    """An identifier other than ``n`` or ``x`` appeared in an expression."""


class DomainMismatch(HypertelError):
    """An expression does not live in the requested coefficient domain."""


class DivisionByZeroExpr(HypertelError):
    """An expression divides by (syntactic or evaluated) zero."""
