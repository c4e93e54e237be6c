"""Command-line entry point."""

import argparse
import logging
import os
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import NoReturn

from .__about__ import __version__
from .bench import BenchOptions, load_corpus, run_bench, summarize, write_csv
from .errors import (
    ConsistencyError,
    GenerationExhaustedError,
    PreconditionError,
    ResourceLimitError,
    TaskSetError,
)
from .generator import ROUNDINGS, GenParams, generate_corpus
from .graph import build_full_automaton, to_dot
from .reachability import ENGINES, ReachReport, SearchOptions, report_to_json
from .schedulers import SCHEDULERS, get_scheduler
from .taskset import TaskSet, parse_taskset
from .verify import run_campaign

EXIT_OK = 0
EXIT_UNSCHEDULABLE = 1
EXIT_CHECK_FAILED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3
EXIT_FAILURE = 4

FULL_SCALE_COUNT = 5000
FULL_SCALE_M = 2
FULL_SCALE_TMAX = 6
DESK_SCALE_COUNT = 1000
DOT_LIMIT = 100_000

LOG_ENV = "SCHEDREACH_LOG"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Invalid flag combination, reported with exit code 3."""


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser exiting with the usage exit code on errors."""

    def error(self, message: str) -> NoReturn:
        """Print usage and exit with the usage exit code."""
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def positive_int(text: str) -> int:
    """Parse a positive integer flag value."""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: '{text}'") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def positive_float(text: str) -> float:
    """Parse a positive number flag value."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number: '{text}'") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def task_count_range(text: str) -> tuple[int, int]:
    """Parse a "MIN:MAX" task count range."""
    low, sep, high = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX, got '{text}'")
    n_min, n_max = positive_int(low), positive_int(high)
    if n_min > n_max:
        raise argparse.ArgumentTypeError(f"empty range {text}")
    return n_min, n_max


def build_parser() -> ArgumentParser:
    """Build the argument parser for every subcommand."""
    parser = ArgumentParser(
        prog="schedreach",
        description="Exact schedulability analysis of sporadic task sets "
        "on identical multiprocessors by automaton reachability.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help=f"log more (-v info, -vv debug); overrides {LOG_ENV}",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    schedulers = sorted(SCHEDULERS)

    analyze = commands.add_parser("analyze", help="decide schedulability of a set")
    analyze.add_argument("file", type=Path, help="task-set file")
    analyze.add_argument("--scheduler", choices=schedulers, default="edf")
    analyze.add_argument("--algo", choices=sorted(ENGINES), default="acbf")
    analyze.add_argument(
        "--trace", action="store_true", help="print a witness path on failure"
    )
    analyze.add_argument("--json", action="store_true", help="print the report as JSON")
    analyze.add_argument("--limit-states", type=positive_int)
    analyze.add_argument("--limit-seconds", type=positive_float)
    analyze.add_argument("--allow-infeasible", action="store_true")
    analyze.add_argument(
        "--dot", type=Path, metavar="FILE", help="also write the automaton as DOT"
    )
    analyze.set_defaults(handler=cmd_analyze)

    generate = commands.add_parser("generate", help="generate a task-set corpus")
    generate.add_argument("--count", type=positive_int)
    generate.add_argument("--tmax", type=positive_int)
    generate.add_argument("--m", type=positive_int)
    generate.add_argument(
        "--n", type=task_count_range, default=(2, 5), metavar="MIN:MAX"
    )
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--out", type=Path, required=True, metavar="DIR")
    generate.add_argument("--wcet-factor", type=positive_float, default=0.35)
    generate.add_argument("--rounding", choices=list(ROUNDINGS), default="ceil")
    generate.add_argument(
        "--full-paper-scale",
        action="store_true",
        help=f"allow more than {DESK_SCALE_COUNT} sets; presets "
        f"count={FULL_SCALE_COUNT}, m={FULL_SCALE_M}, tmax={FULL_SCALE_TMAX}",
    )
    generate.set_defaults(handler=cmd_generate)

    bench = commands.add_parser("bench", help="compare both engines on a corpus")
    bench.add_argument("--in", dest="in_dir", type=Path, required=True, metavar="DIR")
    bench.add_argument("--scheduler", choices=schedulers, default="edf")
    bench.add_argument("--out", type=Path, required=True, metavar="CSV")
    bench.add_argument("--limit-states", type=positive_int)
    bench.add_argument("--limit-seconds", type=positive_float)
    bench.add_argument("--jobs", type=positive_int, default=1)
    bench.set_defaults(handler=cmd_bench)

    export = commands.add_parser("export-dot", help="write the automaton as DOT")
    export.add_argument("file", type=Path, help="task-set file")
    export.add_argument("--out", type=Path, required=True, metavar="FILE")
    export.add_argument("--scheduler", choices=schedulers, default="edf")
    export.add_argument("--limit", type=positive_int, default=DOT_LIMIT)
    export.add_argument("--allow-infeasible", action="store_true")
    export.set_defaults(handler=cmd_export_dot)

    verify = commands.add_parser("verify", help="run the property campaigns")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--count", type=int, default=25)
    verify.add_argument("--tmax", type=positive_int, default=4)
    verify.add_argument("--scheduler", choices=schedulers, default="edf")
    verify.add_argument(
        "--mutant-preorder",
        action="store_true",
        help="check a deliberately broken preorder; expected to fail",
    )
    verify.set_defaults(handler=cmd_verify)

    return parser


def configure_logging(verbosity: int) -> None:
    """Configure the root logger from -v flags or the environment."""
    invalid = None
    if verbosity:
        level = logging.DEBUG if verbosity > 1 else logging.INFO
    else:
        name = os.environ.get(LOG_ENV, "WARNING").upper()
        mapped = logging.getLevelName(name)
        if isinstance(mapped, int):
            level = mapped
        else:
            level, invalid = logging.WARNING, name

    logging.basicConfig(level=level, format=LOG_FORMAT)
    if invalid is not None:
        logger.warning("Ignoring unknown log level %s=%s", LOG_ENV, invalid)


def read_taskset(path: Path, *, allow_infeasible: bool = False) -> TaskSet:
    """Read and parse a task-set file.

    Raises:
        UsageError: The file cannot be read or parsed.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"Cannot read {path}: {exc}") from exc

    try:
        return parse_taskset(text, allow_infeasible=allow_infeasible)
    except TaskSetError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_analyze(args: argparse.Namespace) -> int:
    """Decide schedulability of one task set."""
    ts = read_taskset(args.file, allow_infeasible=args.allow_infeasible)
    scheduler = get_scheduler(args.scheduler, ts)
    options = SearchOptions(
        limit_states=args.limit_states,
        limit_seconds=args.limit_seconds,
        trace=args.trace,
    )
    report = ENGINES[args.algo](ts, scheduler, options)

    if args.json:
        print(report_to_json(report))
    else:
        print_report(report)

    if args.dot is not None:
        try:
            graph = build_full_automaton(ts, scheduler, DOT_LIMIT)
        except ResourceLimitError as exc:
            print(f"Not writing {args.dot}: {exc}", file=sys.stderr)
        else:
            args.dot.write_text(to_dot(graph), encoding="utf-8")

    if report.schedulable is None:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if report.schedulable else EXIT_UNSCHEDULABLE


def print_report(report: ReachReport) -> None:
    """Print a report for humans."""
    print(report.summary())
    print(f"states explored: {report.states_explored}")
    print(f"iterations: {report.iterations}")
    print(f"cpu time: {report.cpu_time * 1000:.3f} ms")
    if report.witness:
        print("witness: " + " -> ".join(map(str, report.witness)))


def cmd_generate(args: argparse.Namespace) -> int:
    """Generate a corpus of task sets."""
    if args.full_paper_scale:
        count = args.count or FULL_SCALE_COUNT
        tmax = args.tmax or FULL_SCALE_TMAX
        m = args.m or FULL_SCALE_M
    else:
        if None in (args.count, args.tmax, args.m):
            raise UsageError("--count, --tmax and --m are required")
        if args.count > DESK_SCALE_COUNT:
            raise UsageError(
                f"--count above {DESK_SCALE_COUNT} needs --full-paper-scale"
            )
        count, tmax, m = args.count, args.tmax, args.m

    try:
        params = GenParams(
            count,
            tmax,
            m,
            n_range=args.n,
            seed=args.seed,
            wcet_mean_factor=args.wcet_factor,
            rounding=args.rounding,
        )
    except PreconditionError as exc:
        raise UsageError(str(exc)) from exc

    try:
        manifest = generate_corpus(params, args.out)
    except GenerationExhaustedError as exc:
        print(exc, file=sys.stderr)
        return EXIT_FAILURE

    print(f"Wrote {len(manifest.task_sets)} task sets to {args.out}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """Benchmark both engines on a corpus."""
    if not args.in_dir.is_dir():
        raise UsageError(f"{args.in_dir} is not a directory")

    try:
        sets = load_corpus(args.in_dir)
    except OSError as exc:
        raise UsageError(f"Cannot read {args.in_dir}: {exc}") from exc
    except TaskSetError as exc:
        raise UsageError(f"{args.in_dir}: {exc}") from exc

    options = BenchOptions(
        limit_states=args.limit_states,
        limit_seconds=args.limit_seconds,
        jobs=args.jobs,
    )
    try:
        records = run_bench(sets, args.scheduler, options)
    except ConsistencyError as exc:
        print(exc, file=sys.stderr)
        return EXIT_FAILURE

    with args.out.open("w", encoding="utf-8", newline="") as stream:
        write_csv(records, stream)

    for line in summarize(records).lines():
        print(line)
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    """Write the reachable automaton of a task set as DOT."""
    ts = read_taskset(args.file, allow_infeasible=args.allow_infeasible)
    try:
        graph = build_full_automaton(ts, get_scheduler(args.scheduler, ts), args.limit)
    except ResourceLimitError as exc:
        print(exc, file=sys.stderr)
        return EXIT_FAILURE

    args.out.write_text(to_dot(graph), encoding="utf-8")
    print(
        f"Wrote {len(graph.nodes)} nodes and {len(graph.edges)} edges to {args.out}"
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the property campaigns."""
    report = run_campaign(
        args.seed,
        args.count,
        args.tmax,
        args.scheduler,
        mutant=args.mutant_preorder,
    )
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except UsageError as exc:
        print(f"schedreach: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

