"""Exact rational arithmetic helpers.

Weights and payoffs are :class:`fractions.Fraction` values end to end, so
every comparison in the package is exact; no float ever enters a decision.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError


def parse_rational(text: str) -> Fraction:
    """Parse ``"3/2"``, ``"1.5"`` or ``"2"`` into an exact Fraction.

    Decimal strings are converted exactly (``"1.5"`` becomes 3/2, not the
    nearest binary float).
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {text!r}") from exc


def as_rational(value) -> Fraction:
    """Coerce int / Fraction / numeric string to a Fraction.

    Floats are rejected: their binary value is almost never the decimal the
    caller had in mind, and exactness is the whole point.
    """
    if isinstance(value, bool):
        raise DomainError("weights must be rational numbers, not bool")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise DomainError(
            f"refusing float weight {value!r}: pass a string or Fraction for exactness"
        )
    raise DomainError(f"cannot interpret {value!r} as a rational number")


def format_rational(value: Fraction) -> str:
    """Canonical string form: ``"3/2"`` for proper fractions, ``"3"`` for integers."""
    return str(value)
