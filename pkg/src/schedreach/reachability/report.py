"""Search options and reports."""

from dataclasses import dataclass, field
from enum import Enum

from xsdata.formats.dataclass.serializers import JsonSerializer
from xsdata.formats.dataclass.serializers.config import SerializerConfig

from schedreach.automaton import SystemState, render_state


class Verdict(Enum):
    """Outcome of a reachability search."""

    REACHABLE = "reachable"
    """A failure state is reachable: the set is unschedulable."""

    NOT_REACHABLE = "not_reachable"
    """No failure state is reachable: the set is schedulable."""

    INCONCLUSIVE = "inconclusive"
    """A resource limit stopped the search before a verdict."""


@dataclass(frozen=True)
class SearchOptions:
    """Resource caps and tracing for a search. Limits default to unlimited."""

    limit_states: int | None = None
    """Stop once more than this many distinct states have been added."""

    limit_seconds: float | None = None
    """Stop once the search has run for this many wall-clock seconds."""

    trace: bool = False
    """Keep parent links so an unschedulable verdict comes with a witness path."""


@dataclass(frozen=True)
class ReachReport:
    """Verdict and exploration statistics of one engine run."""

    algorithm: str
    scheduler: str
    verdict: Verdict
    states_explored: int
    """Distinct states ever added to the working set."""

    iterations: int
    """Breadth-first level at which the search halted."""

    frontier_peak: int
    """Largest number of states expanded in one level."""

    retained_peak: int
    """Largest working-set size."""

    wall_time: float
    cpu_time: float
    limit: str | None = None
    """Which limit stopped an inconclusive search."""

    witness: tuple[SystemState, ...] | None = None
    """Path from the initial state to a failure state, when traced."""

    @property
    def schedulable(self) -> bool | None:
        """Return True/False for a verdict, None when inconclusive."""
        if self.verdict is Verdict.INCONCLUSIVE:
            return None
        return self.verdict is Verdict.NOT_REACHABLE

    def summary(self) -> str:
        """Return a one-line human readable summary."""
        if self.schedulable is None:
            outcome = f"INCONCLUSIVE ({self.limit})"
        else:
            outcome = "SCHEDULABLE" if self.schedulable else "UNSCHEDULABLE"

        return (
            f"{outcome} [{self.algorithm}/{self.scheduler}] "
            f"states={self.states_explored} iterations={self.iterations} "
            f"peak={self.retained_peak} cpu={self.cpu_time * 1000:.1f}ms"
        )


@dataclass
class ReportDocument:
    """Serializable form of a ReachReport."""

    algorithm: str
    scheduler: str
    verdict: str
    schedulable: bool | None
    states_explored: int
    iterations: int
    frontier_peak: int
    retained_peak: int
    wall_time: float
    cpu_time: float
    limit: str | None = None
    witness: list[str] = field(default_factory=list)


def report_to_json(report: ReachReport) -> str:
    """Render a report as JSON."""
    document = ReportDocument(
        algorithm=report.algorithm,
        scheduler=report.scheduler,
        verdict=report.verdict.value,
        schedulable=report.schedulable,
        states_explored=report.states_explored,
        iterations=report.iterations,
        frontier_peak=report.frontier_peak,
        retained_peak=report.retained_peak,
        wall_time=report.wall_time,
        cpu_time=report.cpu_time,
        limit=report.limit,
        witness=[render_state(state) for state in report.witness or ()],
    )
    return JsonSerializer(config=SerializerConfig()).render(document)
