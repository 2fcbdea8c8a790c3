"""Exceptions raised by the arithmetic layers."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .levels import PrecisionLevel


class OverflowSignal(ArithmeticError):
    """A guarded operation detected that its result *might* not fit.

    Only raised at fixed precision levels.  The guard is conservative, so a
    signal does not imply the true result was out of range.
    """

    def __init__(self, operation: str, level: PrecisionLevel):
        super().__init__(f"possible overflow in {operation} at {level}")
        self.operation = operation
        self.level = level


class RangeError(ValueError):
    """A value cannot be stored at the requested fixed precision level."""

    def __init__(self, value: int, level: PrecisionLevel):
        super().__init__(f"{value} is not representable at {level}")
        self.value = value
        self.level = level


class InexactDivisionError(ArithmeticError):
    """qpiv was asked to divide by a value that does not divide exactly."""
