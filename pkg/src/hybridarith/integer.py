"""Generic integer values and the shared operation vocabulary.

Operations write their result into a designated operand, mirroring the
classic ``addint(a, b, c)  # c = a + b`` calling shape, so code written
against them does not change when the precision level does::

    a, b = Int(PrecisionLevel.FIXED64, 5), Int(PrecisionLevel.FIXED64)
    mulint(a, a, b)        # b = 25
"""

from __future__ import annotations

import re
from math import gcd as _gcd
from typing import Union

from .errors import RangeError
from .extended import EXTENDED, ExtendedArith
from .fixed import FIXED64, FIXED128, FixedArith
from .levels import PrecisionLevel

Arith = Union[FixedArith, ExtendedArith]

_DEFAULT = {
    PrecisionLevel.FIXED64: FIXED64,
    PrecisionLevel.FIXED128: FIXED128,
    PrecisionLevel.EXTENDED: EXTENDED,
}
_UNCHECKED = {
    PrecisionLevel.FIXED64: FixedArith(PrecisionLevel.FIXED64, checked=False),
    PrecisionLevel.FIXED128: FixedArith(PrecisionLevel.FIXED128, checked=False),
    PrecisionLevel.EXTENDED: EXTENDED,
}

_DECIMAL = re.compile(r"0|-?[1-9][0-9]*")


def arith_for(level: PrecisionLevel, checked: bool = True) -> Arith:
    """Backend for a level.  ``checked=False`` drops the overflow guards."""
    return (_DEFAULT if checked else _UNCHECKED)[PrecisionLevel(level)]


class Int:
    """A mutable integer cell bound to one precision level."""

    __slots__ = ("arith", "value")

    def __init__(self, level: PrecisionLevel | Arith = PrecisionLevel.EXTENDED, value: int = 0):
        self.arith = level if isinstance(level, (FixedArith, ExtendedArith)) else arith_for(level)
        self.value = self.arith.load(value)

    @property
    def level(self) -> PrecisionLevel:
        return self.arith.level

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Int({self.level!s}, {self.value})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Int):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    __hash__ = None  # mutable


def _same(*xs: Int) -> Arith:
    arith = xs[0].arith
    for x in xs[1:]:
        if x.arith is not arith:
            raise ValueError(f"operands at different levels: {xs[0]!r}, {x!r}")
    return arith


def safe_add(a: Int, b: Int) -> bool:
    return _same(a, b).safe_add(a.value, b.value)


def safe_lin(a: Int, b: Int) -> bool:
    return _same(a, b).safe_lin(a.value, b.value)


def safe_mul(a: Int, b: Int) -> bool:
    return _same(a, b).safe_mul(a.value, b.value)


def itomp(i: int, a: Int) -> None:
    """a = i.  Out-of-range scalars raise :class:`RangeError`."""
    a.value = a.arith.load(i)


def copy(b: Int, a: Int) -> None:
    """b = a."""
    _same(a, b)
    b.value = a.value


def addint(a: Int, b: Int, c: Int) -> None:
    """c = a + b."""
    c.value = _same(a, b, c).add(a.value, b.value)


def subint(a: Int, b: Int, c: Int) -> None:
    """c = a - b."""
    c.value = _same(a, b, c).sub(a.value, b.value)


def mulint(a: Int, b: Int, c: Int) -> None:
    """c = a * b."""
    c.value = _same(a, b, c).mul(a.value, b.value)


def divint(a: Int, b: Int, c: Int) -> None:
    """c = a / b truncated toward zero; a is replaced by the remainder.

    Raises ZeroDivisionError when b is zero.
    """
    q, r = _same(a, b, c).divmod(a.value, b.value)
    a.value = r
    c.value = q


def linint(a: Int, ka: int, b: Int, kb: int) -> None:
    """a = a*ka + b*kb.

    At fixed levels all four of a, b, ka, kb must lie within the linear
    guard bound, otherwise :class:`OverflowSignal` is raised.
    """
    a.value = _same(a, b).lin(a.value, int(ka), b.value, int(kb))


def qpiv(a: Int, b: Int, c: Int, d: Int, e: Int) -> None:
    """a = (a*b - c*d) / e, where the division must be exact."""
    a.value = _same(a, b, c, d, e).qpiv(a.value, b.value, c.value, d.value, e.value)


def changesign(a: Int) -> None:
    a.value = a.arith.neg(a.value)


def sign(a: Int) -> int:
    return (a.value > 0) - (a.value < 0)


def comp(a: Int, b: Int) -> int:
    """-1, 0 or +1 as a <, ==, > b."""
    _same(a, b)
    return (a.value > b.value) - (a.value < b.value)


def gcd(a: Int, b: Int) -> Int:
    """Nonnegative gcd of |a| and |b|; gcd(0, 0) = 0."""
    return Int(_same(a, b), _gcd(a.value, b.value))


def to_decimal(a: Int) -> str:
    return str(a.value)


def from_decimal(s: str, level: PrecisionLevel | Arith = PrecisionLevel.EXTENDED) -> Int:
    """Parse the canonical decimal form: optional '-', no leading zeros.

    Raises ValueError on malformed text and :class:`RangeError` when a
    fixed level cannot hold the value.
    """
    if not isinstance(s, str) or not _DECIMAL.fullmatch(s):
        raise ValueError(f"malformed decimal integer {s!r}")
    return Int(level, int(s))


__all__ = [
    "Arith",
    "Int",
    "RangeError",
    "addint",
    "arith_for",
    "changesign",
    "comp",
    "copy",
    "divint",
    "from_decimal",
    "gcd",
    "itomp",
    "linint",
    "mulint",
    "qpiv",
    "safe_add",
    "safe_lin",
    "safe_mul",
    "sign",
    "subint",
    "to_decimal",
]
