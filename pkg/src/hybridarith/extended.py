"""Unbounded integer backend: the top rung of the precision ladder.

Values are plain Python ints.  Every guard predicate is trivially true and
no operation ever raises :class:`OverflowSignal`.
"""

from __future__ import annotations

from .errors import InexactDivisionError
from .levels import PrecisionLevel


def trunc_divmod(x: int, y: int) -> tuple[int, int]:
    """Quotient rounded toward zero and the remainder carrying x's sign."""
    if y == 0:
        raise ZeroDivisionError("divint by zero")
    q = abs(x) // abs(y)
    if (x < 0) != (y < 0):
        q = -q
    return q, x - q * y


class ExtendedArith:
    level = PrecisionLevel.EXTENDED
    checked = True
    bounds = None

    def fits(self, x: int) -> bool:
        return True

    def load(self, x: int) -> int:
        return int(x)

    def safe_add(self, x: int, y: int) -> bool:
        return True

    safe_lin = safe_mul = safe_add

    def add(self, x: int, y: int) -> int:
        return x + y

    def sub(self, x: int, y: int) -> int:
        return x - y

    def mul(self, x: int, y: int) -> int:
        return x * y

    def neg(self, x: int) -> int:
        return -x

    def divmod(self, x: int, y: int) -> tuple[int, int]:
        return trunc_divmod(x, y)

    def lin(self, a: int, ka: int, b: int, kb: int) -> int:
        return a * ka + b * kb

    def qpiv(self, a: int, b: int, c: int, d: int, e: int) -> int:
        q, r = trunc_divmod(a * b - c * d, e)
        if r:
            raise InexactDivisionError(f"qpiv: {e} does not divide {a * b - c * d}")
        return q

    def __repr__(self) -> str:
        return "ExtendedArith()"


EXTENDED = ExtendedArith()
