"""Memoryless reverse search over the bounded Collatz tree.

The tree has root 1 and contains every k <= maxc whose Collatz trajectory
reaches 1 without passing a value above maxc.  The predecessors of k are
2k, and (k-1)/3 when k = 4 (mod 6); the predecessor 1 of 4 is dropped to
break the 1 -> 4 -> 2 -> 1 cycle.  The depth-first walk stores only the
current node: moving up recomputes the parent with the forward Collatz
step, and the parity of the child says which sibling to try next.

Two interchangeable walkers share one source: a plain Python loop for
Fixed128 and Extended (Python ints), and the same function compiled by
numba over int64 for Fixed64.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .engine import Attempt, Checkpoint, Completed, OutputSink
from .errors import OverflowSignal
from .integer import Int, addint, arith_for, comp, copy, divint, subint
from .levels import PrecisionLevel

DONE, STOPPED, OVERFLOW_DOUBLE, OVERFLOW_PARENT = 0, 1, 2, 3
_INT64_MAX = (1 << 63) - 1

DEFAULT_CHECKPOINT_EVERY = 1_000_000


def parent(k: Int) -> Int:
    """k/2 for even k, 3k+1 for odd k, using guarded addition."""
    if k.value < 2:
        raise ValueError("the root has no parent")
    arith = k.arith
    r, q = Int(arith), Int(arith)
    copy(r, k)
    divint(r, Int(arith, 2), q)
    if r.value == 0:
        return q
    t = Int(arith)
    addint(k, k, t)
    addint(t, k, t)
    addint(t, Int(arith, 1), t)
    return t


def children(k: Int, maxc: Int) -> list[Int]:
    """Tree children of k in visiting order: 2k first, then (k-1)/3."""
    arith = k.arith
    out = []
    d = Int(arith)
    addint(k, k, d)
    if comp(d, maxc) <= 0:
        out.append(d)
    r, q = Int(arith), Int(arith)
    copy(r, k)
    divint(r, Int(arith, 6), q)
    if r.value == 4 and k.value != 4:
        m = Int(arith)
        subint(k, Int(arith, 1), m)
        divint(m, Int(arith, 3), q)
        out.append(q)
    return out


def _walk(k, j, depth, count, maxc, dbl_bound, par_bound, stop_at):
    # j: next child index of k to try (0 = 2k, 1 = (k-1)/3, 2 = none left).
    # dbl_bound / par_bound: largest k for which 2k / 3k+1 pass the guards.
    while True:
        if j == 0:
            if k > dbl_bound:
                return OVERFLOW_DOUBLE, k, j, depth, count
            c = k + k
            if c <= maxc:
                k = c
                depth += 1
                count += 1
                if count >= stop_at:
                    return STOPPED, k, j, depth, count
                continue
            j = 1
        if j == 1:
            j = 2
            if k % 6 == 4 and k != 4:
                k = (k - 1) // 3
                j = 0
                depth += 1
                count += 1
                if count >= stop_at:
                    return STOPPED, k, j, depth, count
                continue
        if depth == 0:
            return DONE, k, j, depth, count
        if k & 1:
            if k > par_bound:
                return OVERFLOW_PARENT, k, j, depth, count
            k = 3 * k + 1
            j = 2
        else:
            k >>= 1
            j = 1
        depth -= 1


def _walk_visiting(k, j, depth, count, maxc, dbl_bound, par_bound, stop_at, visit):
    # _walk with a per-node callback; kept line-for-line in step with it
    while True:
        if j == 0:
            if k > dbl_bound:
                return OVERFLOW_DOUBLE, k, j, depth, count
            c = k + k
            if c <= maxc:
                k = c
                depth += 1
                count += 1
                visit(k)
                if count >= stop_at:
                    return STOPPED, k, j, depth, count
                continue
            j = 1
        if j == 1:
            j = 2
            if k % 6 == 4 and k != 4:
                k = (k - 1) // 3
                j = 0
                depth += 1
                count += 1
                visit(k)
                if count >= stop_at:
                    return STOPPED, k, j, depth, count
                continue
        if depth == 0:
            return DONE, k, j, depth, count
        if k & 1:
            if k > par_bound:
                return OVERFLOW_PARENT, k, j, depth, count
            k = 3 * k + 1
            j = 2
        else:
            k >>= 1
            j = 1
        depth -= 1


@lru_cache(maxsize=None)
def _jit_walk():
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        return None
    return numba.njit(cache=True, nogil=True)(_walk)


def jit_available() -> bool:
    return _jit_walk() is not None


@dataclass(frozen=True)
class CollatzParams:
    maxc: int
    budget: int | None = None

    def __post_init__(self):
        if self.maxc < 1:
            raise ValueError("maxc must be at least 1")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be at least 1")


@dataclass
class TraversalState:
    current: int = 1
    next_child: int = 0
    depth: int = 0
    nodes_counted: int = 1

    def payload(self, maxc: int) -> dict[str, int]:
        return {
            "maxc": maxc,
            "current": self.current,
            "next_child": self.next_child,
            "depth": self.depth,
            "nodes_counted": self.nodes_counted,
        }

    @classmethod
    def from_checkpoint(cls, cp: Checkpoint, maxc: int) -> TraversalState:
        p = cp.payload
        if p.get("maxc") != maxc:
            raise ValueError(f"checkpoint was taken with maxc={p.get('maxc')}, not {maxc}")
        state = cls(p["current"], p["next_child"], p["depth"], p["nodes_counted"])
        if not (1 <= state.current <= maxc and state.next_child in (0, 1, 2)
                and state.depth >= 0 and state.nodes_counted >= 1):
            raise ValueError("checkpoint state is inconsistent")
        return state


@dataclass
class TraversalResult:
    nodes: int
    exhausted: bool
    state: TraversalState


def _guard_limits(level: PrecisionLevel, maxc: int, checked: bool) -> tuple[int, int]:
    arith = arith_for(level)
    if arith.bounds is None or not checked:
        # k never exceeds maxc, so these limits never fire
        return maxc, maxc
    # addint(k, k) needs k <= add; 3k+1 as k+k, +k, +1 needs 3k <= add
    return arith.bounds.add, arith.bounds.add // 3


def traverse(params: CollatzParams, level: PrecisionLevel = PrecisionLevel.FIXED64, *,
             sink: OutputSink | None = None,
             checkpoint_hook: Callable[[dict[str, int]], object] | None = None,
             checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
             resume: TraversalState | None = None,
             on_visit: Callable[[int], object] | None = None,
             checked: bool = True,
             jit: bool | None = None) -> TraversalResult:
    """Depth-first walk of the tree, counting nodes (the root included).

    Stops when the tree is exhausted or ``params.budget`` nodes have been
    counted.  ``checkpoint_hook`` receives the resume state every
    ``checkpoint_every`` nodes.  With ``sink`` each visited node is written
    on its own line.  At fixed levels a guard failure raises
    :class:`OverflowSignal`; a maxc the level cannot hold raises
    :class:`RangeError`.

    ``checked=False`` drops the guards and is only offered on the compiled
    Fixed64 walker, where int64 wraps like the hardware.
    """
    level = PrecisionLevel(level)
    maxc = Int(arith_for(level), params.maxc).value
    if checkpoint_every < 1:
        raise ValueError("checkpoint_every must be positive")
    state = TraversalState() if resume is None else TraversalState(**vars(resume))
    budget = params.budget

    if sink is not None:
        write = sink.write
        inner = on_visit

        def on_visit(k, _inner=inner):
            write(f"{k}\n")
            if _inner is not None:
                _inner(k)

    if on_visit is not None and resume is None:
        on_visit(1)

    use_jit = level is PrecisionLevel.FIXED64 and on_visit is None
    if use_jit and jit is not False:
        walker = _jit_walk()
        if walker is None and jit:
            raise RuntimeError("numba is not available")
        use_jit = walker is not None
    else:
        use_jit = False
    if not checked and not use_jit:
        raise ValueError("unchecked traversal needs the compiled Fixed64 walker")

    dbl, par = _guard_limits(level, maxc, checked)
    if use_jit:
        step = walker
    elif on_visit is not None:
        def step(*args):
            return _walk_visiting(*args, on_visit)
    else:
        step = _walk

    cap = _INT64_MAX if use_jit else None
    while True:
        if budget is not None and state.nodes_counted >= budget:
            return TraversalResult(state.nodes_counted, False, state)
        stop_at = state.nodes_counted + checkpoint_every
        if budget is not None:
            stop_at = min(stop_at, budget)
        if cap is not None:
            stop_at = min(stop_at, cap)
        status, k, j, depth, count = step(state.current, state.next_child, state.depth,
                                          state.nodes_counted, maxc, dbl, par, stop_at)
        if status == OVERFLOW_DOUBLE or status == OVERFLOW_PARENT:
            raise OverflowSignal("addint", level)
        state = TraversalState(int(k), int(j), int(depth), int(count))
        if status == DONE:
            return TraversalResult(state.nodes_counted, True, state)
        if checkpoint_hook is not None:
            checkpoint_hook(state.payload(params.maxc))


class CollatzComputation:
    """Restartable wrapper around :func:`traverse` for the hybrid engine."""

    def __init__(self, params: CollatzParams, checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
                 list_nodes: bool = False, jit: bool | None = None):
        self.params = params
        self.checkpoint_every = checkpoint_every
        self.list_nodes = list_nodes
        self.jit = jit
        self.result: TraversalResult | None = None

    def run(self, attempt: Attempt) -> Completed:
        resume = None
        if attempt.resume_from is not None:
            resume = TraversalState.from_checkpoint(attempt.resume_from, self.params.maxc)
        self.result = traverse(
            self.params,
            attempt.level,
            sink=attempt.sink if self.list_nodes else None,
            checkpoint_hook=attempt.checkpoint,
            checkpoint_every=self.checkpoint_every,
            resume=resume,
            jit=self.jit,
        )
        return Completed()


def report_line(maxc: int, nodes: int, level: PrecisionLevel, escalations: int, seconds: float) -> str:
    return f"maxc={maxc} nodes={nodes} level={level} escalations={escalations} seconds={seconds:.3f}"
