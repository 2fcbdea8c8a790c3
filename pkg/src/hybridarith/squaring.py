"""Repeated squaring: read k, print k and its next six squares."""

from __future__ import annotations

from .engine import Attempt, Completed
from .integer import Int, arith_for, itomp, mulint, to_decimal


class Squaring:
    """Restartable squaring demo.

    Each value goes to the sink as it is produced, separated by single
    spaces, and a newline ends a completed run.  A checkpoint is recorded
    after every squaring.  With ``checked=False`` the fixed levels wrap
    silently, reproducing unguarded machine arithmetic.
    """

    def __init__(self, k: int, iterations: int = 6, checked: bool = True):
        self.k = int(k)
        self.iterations = iterations
        self.checked = checked

    def run(self, attempt: Attempt) -> Completed:
        arith = arith_for(attempt.level, self.checked)
        out = attempt.sink
        a = Int(arith)
        if attempt.resume_from is not None:
            state = attempt.resume_from.payload
            itomp(state["a"], a)
            start = state["i"]
        else:
            itomp(self.k, a)
            out.write(to_decimal(a))
            start = 0
        for i in range(start, self.iterations):
            mulint(a, a, a)
            out.write(" " + to_decimal(a))
            attempt.checkpoint({"a": a, "i": i + 1})
        out.write("\n")
        return Completed()
