"""Property campaigns cross-checking engines, preorder and schedulers.

Every check runs on explicitly enumerated automata, so campaigns are limited to
small task sets. A failed check is returned as a finding, never raised.
"""

import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import islice

import numpy as np

from .antichain import IDLE_PREORDER, IdlePreorder, max_elements
from .automaton import SystemState, is_fail, post, post_set, render_state
from .errors import ResourceLimitError
from .generator import GenParams, TaskSetGenerator
from .graph import build_full_automaton
from .reachability import (
    LockstepResult,
    Verdict,
    acbf_reach,
    bf_reach,
    engine_lockstep_verify,
    lockstep_verify,
)
from .schedulers import (
    PropertyCheck,
    Scheduler,
    check_memoryless,
    check_work_conserving,
    get_scheduler,
    memoryless_pairs,
)
from .taskset import TaskSet

GRAPH_LIMIT = 5000

BUNDLED: dict[str, TaskSet] = {
    "two-tasks": TaskSet.from_params([(2, 2, 1), (3, 3, 2)], m=2),
    "single-task": TaskSet.from_params([(1, 1, 1)], m=1),
    "constrained": TaskSet.from_params([(3, 2, 1), (4, 3, 1), (4, 4, 2)], m=1),
    "overloaded": TaskSet.from_params([(2, 2, 2), (3, 2, 1)], m=1),
    "three-on-two": TaskSet.from_params([(2, 2, 1), (3, 2, 2), (4, 3, 2)], m=2),
}
"""Small instances every campaign starts with, schedulable or not."""

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Finding:
    """A failed check on one instance."""

    check: str
    instance: str
    detail: str

    def __str__(self) -> str:
        """Return the finding as one line."""
        return f"{self.check} failed on {self.instance}: {self.detail}"


@dataclass
class CampaignReport:
    """Checks run and findings of a campaign."""

    instances: int = 0
    checks: Counter[str] = field(default_factory=Counter)
    findings: list[Finding] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True if no check failed."""
        return not self.findings

    def record(self, check: str, instance: str, detail: str | None) -> None:
        """Count a check run, keeping its finding if it failed."""
        self.checks[check] += 1
        if detail is not None:
            self.findings.append(Finding(check, instance, detail))

    def lines(self) -> list[str]:
        """Return a human readable summary, findings first."""
        lines = [str(finding) for finding in self.findings]
        lines.extend(
            f"{check}: {runs} instance(s)"
            for check, runs in sorted(self.checks.items())
        )
        if self.skipped:
            lines.append(f"skipped (too large): {', '.join(self.skipped)}")
        lines.append(
            f"{'PASS' if self.passed else 'FAIL'}: {self.instances} instances, "
            f"{len(self.findings)} finding(s)"
        )
        return lines


def check_simulation(
    scheduler: Scheduler,
    states: Iterable[SystemState],
    preorder: IdlePreorder = IDLE_PREORDER,
) -> PropertyCheck:
    """Check that every simulator of a state can mimic each of its edges.

    For every given state S, every state S2 that simulates S and every
    successor S' of S, some successor of S2 must simulate S'.

    Returns:
        The check outcome; a counterexample is (S, S2, S').
    """
    ts = scheduler.taskset
    for state in states:
        successors = post(state, scheduler)
        for simulator in preorder.simulators(ts, state):
            if simulator == state:
                continue

            mimics = post(simulator, scheduler)
            for successor in successors:
                if not any(preorder(other, successor) for other in mimics):
                    return PropertyCheck(False, (state, simulator, successor))

    return PropertyCheck(True)


def check_failure_preservation(
    ts: TaskSet,
    states: Iterable[SystemState],
    preorder: IdlePreorder = IDLE_PREORDER,
) -> PropertyCheck:
    """Check that every simulator of a failure state is a failure state.

    Returns:
        The check outcome; a counterexample is (S, S2).
    """
    for state in states:
        if not is_fail(ts, state):
            continue

        for simulator in preorder.simulators(ts, state):
            if not is_fail(ts, simulator):
                return PropertyCheck(False, (state, simulator))

    return PropertyCheck(True)


def check_max_post(
    scheduler: Scheduler,
    states: Sequence[SystemState],
    rng: np.random.Generator,
    samples: int,
    preorder: IdlePreorder = IDLE_PREORDER,
) -> PropertyCheck:
    """Check Max(Post(Max(B))) = Max(Post(B)) on random subsets B of states.

    Returns:
        The check outcome; a counterexample is the offending subset.
    """
    for _ in range(samples):
        keep = rng.random(len(states)) < rng.random()
        subset = [state for state, kept in zip(states, keep) if kept]

        reduced = max_elements(subset, preorder)
        pruned = max_elements(post_set(reduced, scheduler), preorder)
        full = max_elements(post_set(subset, scheduler), preorder)
        if pruned.elements != full.elements:
            return PropertyCheck(False, tuple(sorted(subset)))

    return PropertyCheck(True)


def check_engines(
    ts: TaskSet, scheduler: Scheduler, preorder: IdlePreorder = IDLE_PREORDER
) -> str | None:
    """Compare the verdicts of both engines.

    Returns:
        None if they agree, otherwise a description of the disagreement. On a
        reachable failure both must halt at the same level; on a schedulable
        set acbf must not add more states than bf.
    """
    bf = bf_reach(ts, scheduler)
    acbf = acbf_reach(ts, scheduler, preorder=preorder)

    if bf.verdict is not acbf.verdict:
        return f"bf says {bf.verdict.value}, acbf says {acbf.verdict.value}"

    if bf.verdict is Verdict.REACHABLE and bf.iterations != acbf.iterations:
        return (
            f"failure found at level {bf.iterations} by bf "
            f"but at level {acbf.iterations} by acbf"
        )

    if (
        bf.verdict is Verdict.NOT_REACHABLE
        and acbf.states_explored > bf.states_explored
    ):
        return (
            f"acbf added {acbf.states_explored} states, "
            f"more than bf's {bf.states_explored}"
        )

    return None


def campaign_instances(seed: int, count: int, tmax: int) -> list[tuple[str, TaskSet]]:
    """Return the bundled instances followed by count generated ones.

    Generated sets alternate between one processor with two or three tasks and
    two processors with three tasks.
    """
    instances = list(BUNDLED.items())
    if count <= 0:
        return instances

    streams = [
        iter(TaskSetGenerator(GenParams(count, tmax, 1, (2, 3), seed))),
        iter(TaskSetGenerator(GenParams(count, tmax, 2, (3, 3), seed + 1))),
    ]

    generated: list[TaskSet] = []
    while streams and len(generated) < count:
        for stream in list(streams):
            drawn = list(islice(stream, 1))
            if not drawn:
                streams.remove(stream)
                continue
            generated.extend(drawn)

    if len(generated) < count:
        logger.warning(
            "Only %d distinct sets exist for tmax=%d; campaign is smaller",
            len(generated),
            tmax,
        )

    instances.extend(
        (f"generated-{number:03d}", ts)
        for number, ts in enumerate(generated[:count])
    )
    return instances


def run_campaign(
    seed: int = 0,
    count: int = 25,
    tmax: int = 4,
    scheduler: str = "edf",
    *,
    mutant: bool = False,
    samples: int = 20,
) -> CampaignReport:
    """Run every property check on bundled and generated instances.

    Args:
        seed: Seed for generation and subset sampling.
        count: Number of generated instances.
        tmax: Largest period of generated instances.
        scheduler: Name of the scheduler to check.
        mutant: Use the broken preorder that ignores active tasks' nat; the
            campaign is then expected to fail.
        samples: Random subsets per instance for the Max/Post check.

    Returns:
        The campaign report.
    """
    preorder = IdlePreorder(check_active_nat=not mutant)
    rng = np.random.Generator(np.random.PCG64(seed))
    report = CampaignReport()

    for name, ts in campaign_instances(seed, count, tmax):
        sched = get_scheduler(scheduler, ts)
        try:
            graph = build_full_automaton(ts, sched, GRAPH_LIMIT)
        except ResourceLimitError:
            report.skipped.append(name)
            continue

        report.instances += 1
        logger.debug("Checking %s (%d states)", name, len(graph.states))

        states = graph.states
        report.record("engines", name, check_engines(ts, sched, preorder))

        lockstep = lockstep_verify(ts, sched, preorder=preorder)
        report.record("lockstep", name, _lockstep_detail(lockstep))
        engine_lockstep = engine_lockstep_verify(ts, sched, preorder=preorder)
        report.record("engine-lockstep", name, _lockstep_detail(engine_lockstep))
        report.record(
            "simulation", name, _detail(check_simulation(sched, states, preorder))
        )
        report.record(
            "failure-preservation",
            name,
            _detail(check_failure_preservation(ts, states, preorder)),
        )
        report.record(
            "max-post",
            name,
            _detail(check_max_post(sched, states, rng, samples, preorder)),
        )
        report.record(
            "work-conserving",
            name,
            _detail(check_work_conserving(sched, graph.nodes)),
        )
        report.record(
            "memoryless",
            name,
            _detail(check_memoryless(sched, memoryless_pairs(graph.nodes))),
        )

    logger.info(
        "Campaign checked %d instances, %d finding(s)",
        report.instances,
        len(report.findings),
    )
    return report


def _detail(check: PropertyCheck) -> str | None:
    # Counterexample of a failed check, in bracket notation.
    if check:
        return None
    states = check.counterexample or ()
    return "counterexample " + " ".join(render_state(state) for state in states)


def _lockstep_detail(result: LockstepResult) -> str | None:
    if result:
        return None
    expected = " ".join(map(render_state, sorted(result.expected or ())))
    actual = " ".join(map(render_state, sorted(result.actual or ())))
    return f"level {result.divergence}: expected {{{expected}}}, got {{{actual}}}"
