"""Exception types shared across the package."""

from __future__ import annotations


class PmasError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PmasError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class ConflictError(ParseError):
    """The same edge was declared twice with different weights."""


class DomainError(PmasError):
    """An argument lies outside the operation's domain."""


class CapacityError(PmasError):
    """The instance exceeds a hard size cap of an exponential-cost operation."""


class IncompleteSchemeError(PmasError):
    """An allocation scheme is missing a required coalition row."""


class NotPopulationMonotonicError(PmasError):
    """PMAS construction was requested for a game that admits none.

    Carries the failing decision (with its certificate) in ``decision``.
    """

    def __init__(self, decision):
        super().__init__("matching game is not population monotonic")
        self.decision = decision
