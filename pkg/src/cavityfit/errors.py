"""Exception types and the shared scalar-validation helpers.

Kept import-light: every other module in the package depends on this one.
"""

from __future__ import annotations

import math


class CavityFitError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CavityFitError, ValueError):
    """A value violates a domain invariant (wrong sign, wrong type, out of range)."""


class SchemaError(CavityFitError, ValueError):
    """A CSV stream has a missing or malformed header."""


class RowError(CavityFitError, ValueError):
    """A CSV data row could not be parsed; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InsufficientDataError(CavityFitError, ValueError):
    """Too few usable rows for the requested fit."""


class InvalidModelError(CavityFitError, ValueError):
    """The requested cavity model is not usable for this operation."""


class FitTieError(CavityFitError):
    """Both cavity models produced the same weighted residual sum; no winner."""


def ensure_positive(name: str, value: float, minimum: float | None = None) -> float:
    """Validate a strictly positive finite scalar and return it as a float.

    ``minimum`` sets an inclusive lower bound on top of positivity (used for
    the near-zero guards and the n >= 1 bound).
    """
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{name} must be a real number, got {value!r}")
    v = float(value)
    if not math.isfinite(v) or v <= 0.0:
        raise ValidationError(f"{name} must be positive and finite, got {value!r}")
    if minimum is not None and v < minimum:
        raise ValidationError(f"{name} must be >= {minimum}, got {value!r}")
    return v


def expect_type(name: str, value, cls):
    """Reject raw numbers (or any wrong type) at a typed API boundary."""
    if not isinstance(value, cls):
        raise ValidationError(
            f"{name} must be a {cls.__name__}, got {type(value).__name__}: {value!r}"
        )
    return value
