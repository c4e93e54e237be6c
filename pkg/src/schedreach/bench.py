"""Head-to-head benchmark of the plain and antichain engines."""

import csv
import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from pathlib import Path
from statistics import fmean
from typing import TextIO

from .errors import ConsistencyError
from .manifest import MANIFEST_NAME, format_fraction, parse_manifest
from .reachability import SearchOptions, Verdict, acbf_reach, bf_reach
from .schedulers import get_scheduler
from .taskset import TaskSet, parse_taskset, utilization

CSV_COLUMNS = (
    "set_id",
    "n",
    "utilization",
    "verdict",
    "bf_states",
    "acbf_states",
    "bf_time_ms",
    "acbf_time_ms",
    "avoided_fraction",
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchOptions:
    """Per-set resource caps and parallelism."""

    limit_states: int | None = None
    limit_seconds: float | None = None
    jobs: int = 1

    @property
    def search_options(self) -> SearchOptions:
        """Return the options handed to each engine run."""
        return SearchOptions(
            limit_states=self.limit_states, limit_seconds=self.limit_seconds
        )


@dataclass(frozen=True)
class BenchRecord:
    """Outcome of both engines on one task set."""

    set_id: str
    n: int
    utilization: Fraction
    verdict: Verdict
    bf_states: int
    acbf_states: int
    bf_time: float
    """CPU seconds."""

    acbf_time: float
    """CPU seconds."""

    @property
    def completed(self) -> bool:
        """Return True if both engines reached a verdict."""
        return self.verdict is not Verdict.INCONCLUSIVE

    @property
    def avoided_fraction(self) -> float | None:
        """Return 1 - acbf_states / bf_states, None for inconclusive records."""
        if not self.completed:
            return None
        return 1 - self.acbf_states / self.bf_states

    def as_row(self) -> dict[str, str | int]:
        """Return the record as a CSV row."""
        avoided = self.avoided_fraction
        return {
            "set_id": self.set_id,
            "n": self.n,
            "utilization": format_fraction(self.utilization),
            "verdict": self.verdict.value,
            "bf_states": self.bf_states,
            "acbf_states": self.acbf_states,
            "bf_time_ms": f"{self.bf_time * 1000:.3f}",
            "acbf_time_ms": f"{self.acbf_time * 1000:.3f}",
            "avoided_fraction": "" if avoided is None else f"{avoided:.4f}",
        }


@dataclass(frozen=True)
class BenchSummary:
    """Aggregate statistics over completed records."""

    records: int
    inconclusive: int
    mean_avoided: float | None
    mean_avoided_by_verdict: dict[Verdict, float]
    acbf_slower: tuple[str, ...]
    """Sets where the antichain engine used more CPU time."""

    def lines(self) -> list[str]:
        """Return the summary as human readable lines."""

        def percent(value: float | None) -> str:
            return "n/a" if value is None else f"{value:.1%}"

        lines = [
            f"{self.records} sets, {self.inconclusive} inconclusive",
            f"mean avoided fraction: {percent(self.mean_avoided)}",
        ]
        lines.extend(
            f"  {verdict.value}: {percent(value)}"
            for verdict, value in self.mean_avoided_by_verdict.items()
        )
        if self.acbf_slower:
            lines.append(f"acbf slower than bf on {len(self.acbf_slower)} set(s)")
        return lines


def load_corpus(in_dir: Path) -> list[tuple[str, TaskSet]]:
    """Load the task sets of a directory, keyed by file stem.

    The manifest lists the files when present; otherwise every ``*.txt`` file
    is loaded, in name order.
    """
    manifest_path = in_dir / MANIFEST_NAME
    if manifest_path.exists():
        manifest = parse_manifest(manifest_path.read_text(encoding="utf-8"))
        paths = [in_dir / entry.file for entry in manifest.task_sets]
    else:
        paths = sorted(in_dir.glob("*.txt"))

    return [
        (path.stem, parse_taskset(path.read_text(encoding="utf-8"))) for path in paths
    ]


def bench_one(
    set_id: str, ts: TaskSet, scheduler: str, options: BenchOptions
) -> BenchRecord:
    """Run both engines on one task set.

    Raises:
        ConsistencyError: The engines reached different verdicts, or acbf
            added more states than bf on a schedulable set.
    """
    search = options.search_options
    bf = bf_reach(ts, get_scheduler(scheduler, ts), search)
    acbf = acbf_reach(ts, get_scheduler(scheduler, ts), search)

    if Verdict.INCONCLUSIVE in (bf.verdict, acbf.verdict):
        logger.warning("%s: inconclusive (%s)", set_id, bf.limit or acbf.limit)
        verdict = Verdict.INCONCLUSIVE
    elif bf.verdict is not acbf.verdict:
        raise ConsistencyError(
            f"Engines disagree on {set_id} under {scheduler}: "
            f"bf says {bf.verdict.value}, acbf says {acbf.verdict.value}. "
            "This is a bug; please report it with the task-set file."
        )
    else:
        verdict = bf.verdict

    if (
        verdict is Verdict.NOT_REACHABLE
        and acbf.states_explored > bf.states_explored
    ):
        raise ConsistencyError(
            f"acbf added {acbf.states_explored} states on {set_id} under "
            f"{scheduler}, more than bf's {bf.states_explored}. "
            "This is a bug; please report it with the task-set file."
        )
    if (
        verdict is Verdict.REACHABLE
        and acbf.states_explored > bf.states_explored
    ):
        logger.debug(
            "%s: acbf added %d states before the failure, bf %d",
            set_id,
            acbf.states_explored,
            bf.states_explored,
        )

    return BenchRecord(
        set_id=set_id,
        n=len(ts),
        utilization=utilization(ts),
        verdict=verdict,
        bf_states=bf.states_explored,
        acbf_states=acbf.states_explored,
        bf_time=bf.cpu_time,
        acbf_time=acbf.cpu_time,
    )


def run_bench(
    sets: Sequence[tuple[str, TaskSet]],
    scheduler: str,
    options: BenchOptions | None = None,
) -> list[BenchRecord]:
    """Benchmark both engines on every set, sorted by set id.

    Raises:
        ConsistencyError: The engines disagreed on some set.
    """
    options = options or BenchOptions()
    run = partial(_bench_pair, scheduler=scheduler, options=options)

    if options.jobs > 1:
        with ThreadPoolExecutor(max_workers=options.jobs) as executor:
            records = list(executor.map(run, sets))
    else:
        records = [run(pair) for pair in sets]

    return sorted(records, key=lambda record: record.set_id)


def summarize(records: Iterable[BenchRecord]) -> BenchSummary:
    """Aggregate records; inconclusive ones only count as such."""
    collected = list(records)
    completed = [record for record in collected if record.completed]

    avoided: list[float] = []
    by_verdict: dict[Verdict, list[float]] = {}
    for record in sorted(completed, key=lambda record: record.verdict.value):
        if (fraction := record.avoided_fraction) is not None:
            avoided.append(fraction)
            by_verdict.setdefault(record.verdict, []).append(fraction)

    slower = tuple(
        record.set_id for record in completed if record.acbf_time > record.bf_time
    )
    if slower:
        logger.warning("acbf used more CPU time than bf on: %s", ", ".join(slower))

    return BenchSummary(
        records=len(collected),
        inconclusive=len(collected) - len(completed),
        mean_avoided=fmean(avoided) if avoided else None,
        mean_avoided_by_verdict={
            verdict: fmean(values) for verdict, values in by_verdict.items()
        },
        acbf_slower=slower,
    )


def write_csv(records: Iterable[BenchRecord], stream: TextIO) -> None:
    """Write records as CSV, header first."""
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(record.as_row() for record in records)


def _bench_pair(
    pair: tuple[str, TaskSet], *, scheduler: str, options: BenchOptions
) -> BenchRecord:
    set_id, ts = pair
    return bench_one(set_id, ts, scheduler, options)

