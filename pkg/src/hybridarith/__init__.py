"""Fixed-width integer arithmetic with lazy overflow guards, an unbounded
fallback, exact rationals on top, and an engine that escalates a
computation from 64 to 128 bits to unbounded precision on overflow."""

from .engine import (
    Attempt,
    Checkpoint,
    Completed,
    OutputSink,
    Overflowed,
    RestartMode,
    RunReport,
    checkpoint_decode,
    checkpoint_encode,
    run_ladder,
    run_single,
)
from .errors import InexactDivisionError, OverflowSignal, RangeError
from .integer import (
    Int,
    addint,
    arith_for,
    changesign,
    comp,
    copy,
    divint,
    from_decimal,
    gcd,
    itomp,
    linint,
    mulint,
    qpiv,
    safe_add,
    safe_lin,
    safe_mul,
    sign,
    subint,
    to_decimal,
)
from .levels import GuardBounds, PrecisionLevel, guard_bounds
from .rational import Rat, addrat, divrat, mulrat, ratcmp, reduce, subrat

__version__ = "0.1.0"
