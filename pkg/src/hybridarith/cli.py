"""Command line front end: ``square`` and ``collatz`` subcommands.

Exit status: 0 when the computation completed, 1 when a single-level run
halted on a possible overflow, 2 on usage errors.  Computed values go to
stdout and overflow notices to stderr.
"""

from __future__ import annotations

import argparse
import re
import sys

from .collatz import (
    DEFAULT_CHECKPOINT_EVERY,
    CollatzComputation,
    CollatzParams,
    TraversalState,
    report_line,
)
from .engine import Checkpoint, OutputSink, RestartMode, run_ladder, run_single
from .levels import PrecisionLevel
from .squaring import Squaring

EXIT_OK, EXIT_OVERFLOW, EXIT_USAGE = 0, 1, 2

_SHORTHAND = re.compile(r"([0-9]+)[eE]([0-9]+)")
_PLAIN = re.compile(r"-?[0-9]+")


def parse_integer(text: str) -> int:
    """Decimal integer, or ``NeK`` meaning N * 10**K."""
    text = text.strip()
    m = _SHORTHAND.fullmatch(text)
    if m:
        return int(m.group(1)) * 10 ** int(m.group(2))
    if _PLAIN.fullmatch(text):
        return int(text)
    raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def _positive(text: str) -> int:
    value = parse_integer(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybridarith",
        description="Overflow-guarded fixed/extended arithmetic demos and benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--arith", choices=["64", "128", "ext", "hybrid"], default="hybrid",
                        help="precision level, or hybrid to escalate 64 -> 128 -> ext (default)")
    common.add_argument("--restart", choices=[m.value for m in RestartMode], default="begin",
                        help="hybrid restart point after an overflow (default: begin)")

    sq = sub.add_parser("square", parents=[common], help="print k and its repeated squares")
    sq.add_argument("--k", type=parse_integer, required=True)
    sq.add_argument("--iters", type=int, default=6, help="number of squarings (default 6)")
    sq.add_argument("--unchecked", action="store_true",
                    help="drop overflow guards at fixed levels (results wrap silently)")

    co = sub.add_parser("collatz", parents=[common], help="count nodes of the bounded Collatz tree")
    co.add_argument("--maxc", type=_positive, required=True, help="node value cap, e.g. 100000000 or 1e8")
    co.add_argument("--budget", type=_positive, help="stop after this many nodes")
    co.add_argument("--checkpoint-out", metavar="PATH", help="keep the latest checkpoint in PATH")
    co.add_argument("--checkpoint-every", type=_positive, default=DEFAULT_CHECKPOINT_EVERY,
                    metavar="N", help=f"nodes between checkpoints (default {DEFAULT_CHECKPOINT_EVERY})")
    co.add_argument("--resume", metavar="PATH", help="resume from a checkpoint file")
    co.add_argument("--list", action="store_true", help="print every visited node")
    co.add_argument("--no-jit", action="store_true", help="use the pure Python walker at Fixed64")
    return parser


def _notice(msg: str) -> None:
    sys.stdout.flush()
    print(msg, file=sys.stderr, flush=True)


def _drive(comp, args, sink, resume=None, on_checkpoint=None, notify=_notice):
    if args.arith == "hybrid":
        return run_ladder(comp, PrecisionLevel.FIXED64, RestartMode(args.restart), sink,
                          resume_from=resume, notify=notify, on_checkpoint=on_checkpoint)
    return run_single(comp, PrecisionLevel.parse(args.arith), sink,
                      resume_from=resume, notify=notify, on_checkpoint=on_checkpoint)


def _square(args, parser) -> int:
    if args.unchecked and args.arith == "hybrid":
        parser.error("--unchecked cannot be combined with --arith hybrid")
    if args.iters < 0:
        parser.error("--iters must be nonnegative")

    def notify(msg: str) -> None:
        if args.arith != "hybrid":
            sys.stdout.write("\n")  # end the partial value line
        _notice(msg)

    sink = OutputSink(sys.stdout)
    report = _drive(Squaring(args.k, args.iters, checked=not args.unchecked), args, sink, notify=notify)
    return EXIT_OK if report.completed else EXIT_OVERFLOW


def _collatz(args, parser) -> int:
    params = CollatzParams(args.maxc, args.budget)
    resume = None
    if args.resume:
        try:
            resume = Checkpoint.load(args.resume)
            TraversalState.from_checkpoint(resume, params.maxc)
        except (OSError, ValueError, KeyError) as exc:
            parser.error(f"cannot resume from {args.resume}: {exc}")
    comp = CollatzComputation(params, args.checkpoint_every, list_nodes=args.list,
                              jit=False if args.no_jit else None)
    save = None
    if args.checkpoint_out:
        path = args.checkpoint_out

        def save(cp: Checkpoint) -> None:
            cp.save(path)

    sink = OutputSink(sys.stdout)
    report = _drive(comp, args, sink, resume, save)
    if not report.completed:
        return EXIT_OVERFLOW
    result = comp.result
    if save is not None and not result.exhausted:
        save(Checkpoint(result.state.payload(params.maxc)))
    print(report_line(params.maxc, result.nodes, report.final_level, report.escalations, report.seconds))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "square":
        return _square(args, parser)
    return _collatz(args, parser)


if __name__ == "__main__":
    sys.exit(main())
