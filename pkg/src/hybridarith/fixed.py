"""Fixed-width signed arithmetic with lazy overflow guards.

Each operation first tests its operands against the word size's guard
bounds and raises :class:`OverflowSignal` if the result could leave the
representable range.  The arithmetic itself is carried out the way the
machine would: every intermediate is reduced to W-bit two's complement.
With the guards on, that reduction is always the identity; with
``checked=False`` it reproduces the silent wrap-around of unguarded code.
"""

from __future__ import annotations

from .errors import InexactDivisionError, OverflowSignal, RangeError
from .extended import trunc_divmod
from .levels import GuardBounds, PrecisionLevel


class FixedArith:
    def __init__(self, level: PrecisionLevel, checked: bool = True):
        if not level.is_fixed:
            raise ValueError("FixedArith needs a fixed precision level")
        self.level = level
        self.checked = checked
        self.bounds = GuardBounds.for_word_size(level.word_size)
        self._max = self.bounds.max_value
        self._half = 1 << (level.word_size - 1)
        self._mask = (1 << level.word_size) - 1

    def wrap(self, x: int) -> int:
        """Reduce x to the signed W-bit value the hardware would hold."""
        return ((x + self._half) & self._mask) - self._half

    def fits(self, x: int) -> bool:
        return -self._max <= x <= self._max

    def load(self, x: int) -> int:
        # itomp: reject rather than truncate
        x = int(x)
        if not self.fits(x):
            raise RangeError(x, self.level)
        return x

    def safe_add(self, x: int, y: int) -> bool:
        m = self.bounds.add
        return -m <= x <= m and -m <= y <= m

    def safe_lin(self, x: int, y: int) -> bool:
        m = self.bounds.lin
        return -m <= x <= m and -m <= y <= m

    def safe_mul(self, x: int, y: int) -> bool:
        m = self.bounds.mul
        return -m <= x <= m and -m <= y <= m

    def add(self, x: int, y: int) -> int:
        if self.checked and not self.safe_add(x, y):
            raise OverflowSignal("addint", self.level)
        return self.wrap(x + y)

    def sub(self, x: int, y: int) -> int:
        if self.checked and not self.safe_add(x, y):
            raise OverflowSignal("subint", self.level)
        return self.wrap(x - y)

    def mul(self, x: int, y: int) -> int:
        if self.checked and not self.safe_mul(x, y):
            raise OverflowSignal("mulint", self.level)
        return self.wrap(x * y)

    def neg(self, x: int) -> int:
        return self.wrap(-x)

    def divmod(self, x: int, y: int) -> tuple[int, int]:
        # cannot overflow: -2**(W-1) is never a stored operand
        q, r = trunc_divmod(x, y)
        return self.wrap(q), r

    def lin(self, a: int, ka: int, b: int, kb: int) -> int:
        if self.checked and not (self.safe_lin(a, b) and self.safe_lin(ka, kb)):
            raise OverflowSignal("linint", self.level)
        w = self.wrap
        return w(w(a * ka) + w(b * kb))

    def qpiv(self, a: int, b: int, c: int, d: int, e: int) -> int:
        if self.checked and not (self.safe_lin(a, b) and self.safe_lin(c, d)):
            raise OverflowSignal("qpiv", self.level)
        w = self.wrap
        t = w(w(a * b) - w(c * d))
        q, r = trunc_divmod(t, e)
        if r:
            raise InexactDivisionError(f"qpiv: {e} does not divide {t}")
        return w(q)

    def __repr__(self) -> str:
        return f"FixedArith({self.level!s}, checked={self.checked})"


FIXED64 = FixedArith(PrecisionLevel.FIXED64)
FIXED128 = FixedArith(PrecisionLevel.FIXED128)
