"""Exact rationals as pairs of :class:`Int` in lowest terms.

The six-argument functions follow the integer layer's output-operand
shape: ``mulrat(a, b, c, d, e, f)`` sets ``e/f = a/b * c/d``.  Overflow
detection is whatever the constituent integer operations provide.
"""

from __future__ import annotations

import re

from .integer import (
    Arith,
    Int,
    changesign,
    copy,
    divint,
    gcd,
    itomp,
    linint,
    mulint,
    sign,
)
from .levels import PrecisionLevel

_RAT = re.compile(r"(-?[0-9]+)(?:/([0-9]+))?")


def reduce(a: Int, b: Int) -> None:
    """Divide a and b by their gcd and move the sign into a."""
    if b.value == 0:
        raise ZeroDivisionError("zero denominator")
    if a.value == 0:
        itomp(1, b)
        return
    g = gcd(a, b)
    if g.value != 1:
        q = Int(a.arith)
        divint(a, g, q)
        copy(a, q)
        divint(b, g, q)
        copy(b, q)
    if b.value < 0:
        changesign(a)
        changesign(b)


def mulrat(a: Int, b: Int, c: Int, d: Int, e: Int, f: Int) -> None:
    """e/f = a/b * c/d, reduced."""
    num, den = Int(a.arith), Int(a.arith)
    mulint(a, c, num)
    mulint(b, d, den)
    reduce(num, den)
    copy(e, num)
    copy(f, den)


def _linear(a: Int, b: Int, c: Int, d: Int, e: Int, f: Int, s: int) -> None:
    # e/f = (a*d + s*c*b) / (b*d)
    num, den = Int(a.arith), Int(a.arith)
    copy(num, a)
    linint(num, d.value, c, s * b.value)
    mulint(b, d, den)
    reduce(num, den)
    copy(e, num)
    copy(f, den)


def addrat(a: Int, b: Int, c: Int, d: Int, e: Int, f: Int) -> None:
    """e/f = a/b + c/d, reduced."""
    _linear(a, b, c, d, e, f, 1)


def subrat(a: Int, b: Int, c: Int, d: Int, e: Int, f: Int) -> None:
    """e/f = a/b - c/d, reduced."""
    _linear(a, b, c, d, e, f, -1)


def divrat(a: Int, b: Int, c: Int, d: Int, e: Int, f: Int) -> None:
    """e/f = (a/b) / (c/d), reduced."""
    if c.value == 0:
        raise ZeroDivisionError("rational division by zero")
    num, den = Int(a.arith), Int(a.arith)
    mulint(a, d, num)
    mulint(b, c, den)
    reduce(num, den)
    copy(e, num)
    copy(f, den)


def ratcmp(a: Int, b: Int, c: Int, d: Int) -> int:
    """Sign of a/b - c/d."""
    t = Int(a.arith)
    copy(t, a)
    linint(t, d.value, c, -b.value)
    return sign(t) * sign(b) * sign(d)


class Rat:
    """Canonical rational: den > 0 and gcd(|num|, den) == 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: int | Int, den: int | Int = 1, level: PrecisionLevel | Arith = PrecisionLevel.EXTENDED):
        if isinstance(num, Int):
            level = num.arith
        self.num = Int(level, int(num))
        self.den = Int(self.num.arith, int(den))
        reduce(self.num, self.den)

    @classmethod
    def parse(cls, text: str, level: PrecisionLevel | Arith = PrecisionLevel.EXTENDED) -> Rat:
        """Read ``num/den`` or a bare integer."""
        m = _RAT.fullmatch(text.strip())
        if not m:
            raise ValueError(f"malformed rational {text!r}")
        num = Int(level, int(m.group(1)))
        den = Int(num.arith, int(m.group(2)) if m.group(2) else 1)
        return cls(num, den)

    @property
    def level(self) -> PrecisionLevel:
        return self.num.level

    def _apply(self, op, other: Rat) -> Rat:
        out = Rat.__new__(Rat)
        out.num, out.den = Int(self.num.arith), Int(self.num.arith)
        op(self.num, self.den, other.num, other.den, out.num, out.den)
        return out

    def __add__(self, other: Rat) -> Rat:
        return self._apply(addrat, other)

    def __sub__(self, other: Rat) -> Rat:
        return self._apply(subrat, other)

    def __mul__(self, other: Rat) -> Rat:
        return self._apply(mulrat, other)

    def __truediv__(self, other: Rat) -> Rat:
        return self._apply(divrat, other)

    def __neg__(self) -> Rat:
        out = Rat(self.num.value, self.den.value, self.num.arith)
        changesign(out.num)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rat):
            return NotImplemented
        return self.num.value == other.num.value and self.den.value == other.den.value

    __hash__ = None

    def __lt__(self, other: Rat) -> bool:
        return ratcmp(self.num, self.den, other.num, other.den) < 0

    def __le__(self, other: Rat) -> bool:
        return ratcmp(self.num, self.den, other.num, other.den) <= 0

    def __str__(self) -> str:
        if self.den.value == 1:
            return str(self.num.value)
        return f"{self.num.value}/{self.den.value}"

    def __repr__(self) -> str:
        return f"Rat({self}, {self.level!s})"


__all__ = ["Rat", "addrat", "divrat", "mulrat", "ratcmp", "reduce", "subrat"]
