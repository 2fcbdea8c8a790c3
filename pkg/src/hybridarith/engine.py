"""Run a computation up the precision ladder until some level completes.

A computation exposes ``run(attempt)`` and is handed an :class:`Attempt`
carrying the level to use, an optional checkpoint to resume from, the
output sink, and an :class:`~contextlib.ExitStack` for anything it
allocates.  It returns :class:`Completed` or :class:`Overflowed`; raising
:class:`OverflowSignal` (or :class:`RangeError` while loading a value that
the level cannot hold) is treated the same as returning ``Overflowed``.

On overflow the engine closes the attempt's resources, drops the output the
attempt produced since its last commit point, prints a notice, and runs
again one rung higher, either from the initial state or from the latest
checkpoint.
"""

from __future__ import annotations

import enum
import os
import re
import sys
import tempfile
import time
from contextlib import ExitStack
from dataclasses import dataclass, field
from typing import Callable, Mapping, Protocol, TextIO, Union

from .errors import OverflowSignal, RangeError
from .integer import Int, arith_for
from .levels import PrecisionLevel

RESTART_NOTICE = "overflow detected:restarting"
HALT_NOTICE = "overflow detected:halting"

FORMAT_VERSION = "hybridarith-checkpoint-v1"
_KEY = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*")
_VALUE = re.compile(r"0|-?[1-9][0-9]*")


class RestartMode(str, enum.Enum):
    FROM_BEGINNING = "begin"
    FROM_CHECKPOINT = "checkpoint"


class OutputSink:
    """Text output that can be held back until the producer is known to be safe.

    In buffered mode nothing reaches the consumer until :meth:`commit`;
    :meth:`discard` drops everything held.  In streaming mode writes pass
    straight through.
    """

    def __init__(self, consumer: TextIO | Callable[[str], object] | None = None, buffered: bool = True):
        if consumer is None:
            consumer = sys.stdout
        self._emit = consumer.write if hasattr(consumer, "write") else consumer
        self.buffered = buffered
        self._held: list[str] = []

    @property
    def held(self) -> str:
        return "".join(self._held)

    def write(self, text: str) -> None:
        if self.buffered:
            self._held.append(text)
        else:
            self._emit(text)

    def commit(self) -> None:
        """Release everything held to the consumer."""
        if self._held:
            self._emit("".join(self._held))
            self._held.clear()

    flush = commit

    def discard(self) -> None:
        self._held.clear()

    def set_buffered(self, buffered: bool) -> None:
        if not buffered:
            self.commit()
        self.buffered = buffered


class CollectingSink(OutputSink):
    """Sink whose consumer is an in-memory string; handy for tests and services."""

    def __init__(self, buffered: bool = True):
        self.parts: list[str] = []
        super().__init__(self.parts.append, buffered)

    @property
    def text(self) -> str:
        return "".join(self.parts)


@dataclass(frozen=True)
class Checkpoint:
    """Level-agnostic resume state: named integers, stored as Python ints."""

    payload: Mapping[str, int]
    version: str = FORMAT_VERSION

    def dumps(self) -> str:
        lines = [self.version]
        for key, value in self.payload.items():
            if not _KEY.fullmatch(key):
                raise ValueError(f"bad checkpoint key {key!r}")
            lines.append(f"{key} {int(value)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> Checkpoint:
        lines = text.splitlines()
        if not lines or lines[0].strip() != FORMAT_VERSION:
            raise ValueError("not a checkpoint file (bad version line)")
        payload: dict[str, int] = {}
        for n, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 2 or not _KEY.fullmatch(parts[0]) or not _VALUE.fullmatch(parts[1]):
                raise ValueError(f"checkpoint line {n} malformed: {line!r}")
            payload[parts[0]] = int(parts[1])
        return cls(payload)

    def save(self, path: str | os.PathLike) -> None:
        """Write atomically so a reader never sees a half-written file."""
        path = os.fspath(path)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", prefix=".ckpt-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(self.dumps())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def load(cls, path: str | os.PathLike) -> Checkpoint:
        with open(path) as fh:
            return cls.loads(fh.read())


def checkpoint_encode(state: Mapping[str, Int | int]) -> Checkpoint:
    return Checkpoint({k: int(v) for k, v in state.items()})


def checkpoint_decode(cp: Checkpoint, level: PrecisionLevel) -> dict[str, Int]:
    """Rebuild the state at ``level``; RangeError if a value does not fit."""
    if cp.version != FORMAT_VERSION:
        raise ValueError(f"unsupported checkpoint version {cp.version!r}")
    arith = arith_for(level)
    return {k: Int(arith, v) for k, v in cp.payload.items()}


@dataclass
class Completed:
    pass


@dataclass
class Overflowed:
    signal: Exception
    checkpoint: Checkpoint | None = None


RunResult = Union[Completed, Overflowed]


class Attempt:
    """Everything one run of a computation at one level may touch."""

    def __init__(self, level: PrecisionLevel, resume_from: Checkpoint | None, sink: OutputSink,
                 commit_on_checkpoint: bool = False,
                 on_checkpoint: Callable[[Checkpoint], object] | None = None):
        self.level = level
        self.resume_from = resume_from
        self.sink = sink
        self.resources = ExitStack()
        self.latest: Checkpoint | None = None
        self._commit = commit_on_checkpoint
        self._on_checkpoint = on_checkpoint

    def checkpoint(self, state: Mapping[str, Int | int]) -> Checkpoint:
        """Record a resume point.  Only the most recent one is kept."""
        cp = checkpoint_encode(state)
        self.latest = cp
        if self._commit:
            self.sink.commit()
        if self._on_checkpoint is not None:
            self._on_checkpoint(cp)
        return cp


class RestartableComputation(Protocol):
    def run(self, attempt: Attempt) -> RunResult: ...


@dataclass
class AttemptRecord:
    level: PrecisionLevel
    seconds: float
    completed: bool
    resumed: bool
    restart_mode: RestartMode | None = None


@dataclass
class RunReport:
    attempts: list[AttemptRecord] = field(default_factory=list)

    @property
    def final_level(self) -> PrecisionLevel:
        return self.attempts[-1].level

    @property
    def completed(self) -> bool:
        return bool(self.attempts) and self.attempts[-1].completed

    @property
    def escalations(self) -> int:
        return sum(1 for a in self.attempts if a.restart_mode is not None)

    @property
    def seconds(self) -> float:
        return sum(a.seconds for a in self.attempts)

    @property
    def level_seconds(self) -> dict[PrecisionLevel, float]:
        out: dict[PrecisionLevel, float] = {}
        for a in self.attempts:
            out[a.level] = out.get(a.level, 0.0) + a.seconds
        return out


def _stderr_notice(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _attempt(comp: RestartableComputation, attempt: Attempt) -> RunResult:
    with attempt.resources:
        try:
            result = comp.run(attempt)
        except (OverflowSignal, RangeError) as exc:
            if not attempt.level.is_fixed:
                raise
            return Overflowed(exc, attempt.latest)
    if isinstance(result, Overflowed) and result.checkpoint is None:
        result.checkpoint = attempt.latest
    return result


def run_single(comp: RestartableComputation, level: PrecisionLevel, sink: OutputSink | None = None,
               resume_from: Checkpoint | None = None,
               notify: Callable[[str], object] = _stderr_notice,
               on_checkpoint: Callable[[Checkpoint], object] | None = None) -> RunReport:
    """One attempt at one level; output streams and overflow halts."""
    sink = sink if sink is not None else OutputSink(buffered=False)
    sink.set_buffered(False)
    attempt = Attempt(level, resume_from, sink, on_checkpoint=on_checkpoint)
    t0 = time.perf_counter()
    result = _attempt(comp, attempt)
    done = isinstance(result, Completed)
    report = RunReport([AttemptRecord(level, time.perf_counter() - t0, done, resume_from is not None)])
    if not done:
        notify(HALT_NOTICE)
    return report


def run_ladder(comp: RestartableComputation, start: PrecisionLevel = PrecisionLevel.FIXED64,
               mode: RestartMode = RestartMode.FROM_BEGINNING, sink: OutputSink | None = None,
               resume_from: Checkpoint | None = None,
               notify: Callable[[str], object] = _stderr_notice,
               on_checkpoint: Callable[[Checkpoint], object] | None = None) -> RunReport:
    """Attempt ``comp`` at ``start`` and escalate on overflow until it completes.

    Output is held while the current level can still overflow, so the
    consumer sees exactly the output of a single successful run.
    ``resume_from`` seeds the first attempt; in FROM_BEGINNING mode every
    retry restarts from that same point.
    """
    mode = RestartMode(mode)
    sink = sink if sink is not None else OutputSink()
    report = RunReport()
    level = PrecisionLevel(start)
    resume = resume_from
    restart: RestartMode | None = None
    while True:
        sink.set_buffered(level.is_fixed)
        attempt = Attempt(level, resume, sink,
                          commit_on_checkpoint=mode is RestartMode.FROM_CHECKPOINT,
                          on_checkpoint=on_checkpoint)
        t0 = time.perf_counter()
        result = _attempt(comp, attempt)
        done = isinstance(result, Completed)
        report.attempts.append(AttemptRecord(level, time.perf_counter() - t0, done,
                                             resume is not None, restart))
        if done:
            sink.commit()
            return report
        sink.discard()
        notify(RESTART_NOTICE)
        if mode is RestartMode.FROM_CHECKPOINT and result.checkpoint is not None:
            resume = result.checkpoint
        level = level.next()
        restart = mode
