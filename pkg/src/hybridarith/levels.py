"""The precision ladder and the per-word-size guard constants."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt


class PrecisionLevel(enum.IntEnum):
    """Arithmetic backends ordered by precision: Fixed64 < Fixed128 < Extended."""

    FIXED64 = 1
    FIXED128 = 2
    EXTENDED = 3

    @property
    def word_size(self) -> int | None:
        """Bits in the machine word, or None for the unbounded level."""
        return _WORD_SIZES[self]

    @property
    def is_fixed(self) -> bool:
        return self is not PrecisionLevel.EXTENDED

    def next(self) -> PrecisionLevel:
        if self is PrecisionLevel.EXTENDED:
            raise ValueError("Extended is the top of the precision ladder")
        return PrecisionLevel(self + 1)

    @classmethod
    def parse(cls, text: str) -> PrecisionLevel:
        """Accept '64', '128', 'ext' or a display name like 'Fixed64'."""
        key = text.strip().lower()
        try:
            return _ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown precision level {text!r}") from None

    def __str__(self) -> str:
        return _NAMES[self]


_WORD_SIZES = {
    PrecisionLevel.FIXED64: 64,
    PrecisionLevel.FIXED128: 128,
    PrecisionLevel.EXTENDED: None,
}
_NAMES = {
    PrecisionLevel.FIXED64: "Fixed64",
    PrecisionLevel.FIXED128: "Fixed128",
    PrecisionLevel.EXTENDED: "Extended",
}
_ALIASES = {
    "64": PrecisionLevel.FIXED64,
    "fixed64": PrecisionLevel.FIXED64,
    "128": PrecisionLevel.FIXED128,
    "fixed128": PrecisionLevel.FIXED128,
    "ext": PrecisionLevel.EXTENDED,
    "extended": PrecisionLevel.EXTENDED,
}


@dataclass(frozen=True)
class GuardBounds:
    """Operand magnitude limits under which an operation cannot overflow.

    ``add`` guards addition-class operations, ``lin`` guards linear forms
    (linint, qpiv, and anything else that multiplies two guarded operands
    and adds the products), ``mul`` guards a single product.
    """

    word_size: int
    add: int
    lin: int
    mul: int

    @property
    def max_value(self) -> int:
        """Largest stored magnitude; -2**(W-1) is never stored."""
        return (1 << (self.word_size - 1)) - 1

    @classmethod
    def for_word_size(cls, word_size: int) -> GuardBounds:
        return _bounds(word_size)


@lru_cache(maxsize=None)
def _bounds(word_size: int) -> GuardBounds:
    if word_size < 4 or word_size % 2:
        raise ValueError(f"unsupported word size {word_size}")
    top = (1 << (word_size - 1)) - 1
    return GuardBounds(
        word_size=word_size,
        add=(1 << (word_size - 2)) - 1,
        lin=(1 << (word_size // 2 - 1)) - 1,
        mul=isqrt(top),
    )


def guard_bounds(level: PrecisionLevel) -> GuardBounds | None:
    """Guard constants for a fixed level; None at Extended."""
    if level.word_size is None:
        return None
    return _bounds(level.word_size)
