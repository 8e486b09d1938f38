"""Exception types raised by the library.

Every error is a subclass of :class:`BoolFourierError` so callers can catch
the whole family; most also subclass ``ValueError`` because they signal bad
arguments rather than internal faults.
"""

from __future__ import annotations

__all__ = [
    "BoolFourierError",
    "NotBoolean",
    "DimensionMismatch",
    "ZeroDirection",
    "DependentConstraints",
    "DependentInput",
    "ConstantInput",
    "NotFound",
    "InvalidEta",
    "InvalidSpec",
    "TooLarge",
    "InvalidTree",
    "ZeroDensity",
    "InvalidDegree",
]


class BoolFourierError(Exception):
    """Base class for all library errors."""


class NotBoolean(BoolFourierError, ValueError):
    """A reconstructed or supplied value is not in {0, 1}."""


class DimensionMismatch(BoolFourierError, ValueError):
    """Operands live on different numbers of variables."""


class ZeroDirection(BoolFourierError, ValueError):
    """A direction or constraint mask is zero where a nonzero one is required."""


class DependentConstraints(BoolFourierError, ValueError):
    """Affine constraint masks are linearly dependent."""


class DependentInput(BoolFourierError, ValueError):
    """Input vectors expected to be independent are not."""


class ConstantInput(BoolFourierError, ValueError):
    """The operation requires a non-constant function."""


class NotFound(BoolFourierError):
    """Exhaustive search ended without a witness inside the stated budget."""


class InvalidEta(BoolFourierError, ValueError):
    """Noise parameter outside (0, 1]."""


class InvalidSpec(BoolFourierError, ValueError):
    """A function or family specification failed validation."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)
        self.position = position


class TooLarge(BoolFourierError, ValueError):
    """The requested computation exceeds the documented size guard."""


class InvalidTree(BoolFourierError, ValueError):
    """A parity decision tree is structurally invalid."""


class ZeroDensity(BoolFourierError, ValueError):
    """The function is constant zero where positive density is required."""


class InvalidDegree(BoolFourierError, ValueError):
    """Degree parameter outside the supported range."""
