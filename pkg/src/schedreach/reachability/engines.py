"""Breadth-first reachability engines over the scheduling automaton.

Both engines build the automaton on the fly, level by level, and stop at the
first failure state generated. The antichain engine keeps only states that are
maximal under a simulation preorder and never expands a dominated state.
"""

import logging
import time
from collections.abc import Callable

from schedreach.antichain import IDLE_PREORDER, Antichain, IdlePreorder
from schedreach.automaton import SystemState, initial_state, is_fail, post
from schedreach.errors import PreconditionError
from schedreach.schedulers import Scheduler
from schedreach.taskset import TaskSet

from .report import ReachReport, SearchOptions, Verdict

logger = logging.getLogger(__name__)

Parents = dict[SystemState, SystemState | None]
LevelCallback = Callable[[int, frozenset[SystemState]], None]


class _Run:
    """Bookkeeping shared by both engines: limits, timers, statistics."""

    def __init__(
        self, algorithm: str, scheduler: Scheduler, options: SearchOptions
    ) -> None:
        self.algorithm = algorithm
        self.scheduler = scheduler
        self.options = options
        self.parents: Parents | None = {} if options.trace else None
        self.explored = 0
        self.iterations = 0
        self.frontier_peak = 1
        self.retained_peak = 1
        self._wall_start = time.perf_counter()
        self._cpu_start = time.thread_time()
        self._deadline = (
            None
            if options.limit_seconds is None
            else time.monotonic() + options.limit_seconds
        )

    def record(self, state: SystemState, parent: SystemState | None) -> None:
        # Count a newly added state and remember how it was reached.
        self.explored += 1
        if self.parents is not None:
            self.parents[state] = parent

    def exceeded(self) -> str | None:
        # Name of the limit the search ran into, if any.
        limit_states = self.options.limit_states
        if limit_states is not None and self.explored > limit_states:
            return f"more than {limit_states} states"
        if self._deadline is not None and time.monotonic() > self._deadline:
            return f"more than {self.options.limit_seconds} seconds"
        return None

    def finish(
        self,
        verdict: Verdict,
        *,
        failure: SystemState | None = None,
        limit: str | None = None,
    ) -> ReachReport:
        witness = None
        if failure is not None and self.parents is not None:
            witness = _witness(self.parents, failure)

        report = ReachReport(
            algorithm=self.algorithm,
            scheduler=self.scheduler.name,
            verdict=verdict,
            states_explored=self.explored,
            iterations=self.iterations,
            frontier_peak=self.frontier_peak,
            retained_peak=self.retained_peak,
            wall_time=time.perf_counter() - self._wall_start,
            cpu_time=time.thread_time() - self._cpu_start,
            limit=limit,
            witness=witness,
        )
        logger.info("%s", report.summary())
        return report


def bf_reach(
    ts: TaskSet,
    scheduler: Scheduler,
    options: SearchOptions | None = None,
    *,
    on_level: LevelCallback | None = None,
) -> ReachReport:
    """Decide whether a failure state is reachable by plain breadth-first search.

    Args:
        ts: The task set.
        scheduler: The scheduler defining the clock-tick transitions.
        options: Resource caps and tracing.
        on_level: Called with the level number and the reached set after
            every completed level.

    Returns:
        A report; its verdict is INCONCLUSIVE if a limit was hit first.
    """
    run = _Run("bf", scheduler, options or SearchOptions())
    start = initial_state(ts)
    run.record(start, None)
    if is_fail(ts, start):
        return run.finish(Verdict.REACHABLE, failure=start)

    reached = {start}
    frontier = [start]
    while frontier:
        run.iterations += 1
        run.frontier_peak = max(run.frontier_peak, len(frontier))
        added: list[SystemState] = []

        for state in frontier:
            for successor in post(state, scheduler):
                if successor in reached:
                    continue

                reached.add(successor)
                run.record(successor, state)
                if is_fail(ts, successor):
                    run.retained_peak = len(reached)
                    return run.finish(Verdict.REACHABLE, failure=successor)

                added.append(successor)

            if limit := run.exceeded():
                run.retained_peak = len(reached)
                return run.finish(Verdict.INCONCLUSIVE, limit=limit)

        logger.debug(
            "bf level %d: %d new states, %d reached",
            run.iterations,
            len(added),
            len(reached),
        )
        run.retained_peak = len(reached)
        if on_level is not None:
            on_level(run.iterations, frozenset(reached))
        frontier = added

    return run.finish(Verdict.NOT_REACHABLE)


def acbf_reach(
    ts: TaskSet,
    scheduler: Scheduler,
    options: SearchOptions | None = None,
    *,
    preorder: IdlePreorder = IDLE_PREORDER,
    on_level: LevelCallback | None = None,
) -> ReachReport:
    """Decide whether a failure state is reachable, pruning simulated states.

    Each level keeps only the maximal states under the preorder, computed
    incrementally while successors are generated.

    Args:
        ts: The task set.
        scheduler: A memoryless scheduler; the pruning is only sound for those.
        options: Resource caps and tracing.
        preorder: The simulation preorder.
        on_level: Called with the level number and the antichain after every
            completed level.

    Returns:
        A report; its verdict is INCONCLUSIVE if a limit was hit first.

    Raises:
        PreconditionError: The scheduler is not memoryless.
    """
    if not scheduler.memoryless:
        raise PreconditionError(
            f"Scheduler '{scheduler.name}' is not memoryless; "
            "antichain pruning would be unsound"
        )

    run = _Run("acbf", scheduler, options or SearchOptions())
    start = initial_state(ts)
    run.record(start, None)
    if is_fail(ts, start):
        return run.finish(Verdict.REACHABLE, failure=start)

    antichain = Antichain([start], preorder)
    frontier = [start]
    while frontier:
        run.iterations += 1
        run.frontier_peak = max(run.frontier_peak, len(frontier))
        added: list[SystemState] = []

        # Elements dropped from the antichain during this level are still
        # expanded: they belong to the previous level's set.
        for state in frontier:
            for successor in post(state, scheduler):
                if is_fail(ts, successor):
                    antichain.insert(successor)
                    run.record(successor, state)
                    run.retained_peak = max(run.retained_peak, len(antichain))
                    return run.finish(Verdict.REACHABLE, failure=successor)

                if antichain.insert(successor):
                    run.record(successor, state)
                    added.append(successor)

            run.retained_peak = max(run.retained_peak, len(antichain))
            if limit := run.exceeded():
                return run.finish(Verdict.INCONCLUSIVE, limit=limit)

        logger.debug(
            "acbf level %d: %d new states, %d retained",
            run.iterations,
            len(added),
            len(antichain),
        )
        if on_level is not None:
            on_level(run.iterations, antichain.elements)
        frontier = [state for state in added if state in antichain]

    return run.finish(Verdict.NOT_REACHABLE)


def _witness(parents: Parents, failure: SystemState) -> tuple[SystemState, ...]:
    # Follow parent links back to the initial state.
    path = [failure]
    parent = parents[failure]
    while parent is not None:
        path.append(parent)
        parent = parents[parent]
    return tuple(reversed(path))


Engine = Callable[[TaskSet, Scheduler, SearchOptions | None], ReachReport]

ENGINES: dict[str, Engine] = {
    "bf": bf_reach,
    "acbf": acbf_reach,
}
"""Engines selectable by name."""
