"""Side-by-side check of the plain and antichain level sequences."""

import logging
from dataclasses import dataclass
from itertools import zip_longest

from schedreach.antichain import IDLE_PREORDER, IdlePreorder, max_elements
from schedreach.automaton import SystemState
from schedreach.schedulers import Scheduler
from schedreach.taskset import TaskSet

from .engines import acbf_reach
from .levels import acbf_levels, bf_levels

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LockstepResult:
    """Outcome of a lockstep comparison."""

    holds: bool
    """Every antichain level equals the maximal elements of the plain level."""

    iterations: int
    """Number of levels compared."""

    divergence: int | None = None
    """First level where the two sequences disagree."""

    expected: frozenset[SystemState] | None = None
    """Maximal elements of the plain level at the divergence."""

    actual: frozenset[SystemState] | None = None
    """Antichain level at the divergence."""

    def __bool__(self) -> bool:
        """Return True if the sequences agree."""
        return self.holds


def lockstep_verify(
    ts: TaskSet,
    scheduler: Scheduler,
    max_iters: int | None = None,
    *,
    preorder: IdlePreorder = IDLE_PREORDER,
) -> LockstepResult:
    """Compare each antichain level with the maximal elements of the plain level.

    The shorter sequence is padded with its last level, which is a fixpoint.

    Args:
        ts: The task set.
        scheduler: The scheduler.
        max_iters: Stop after this many levels.
        preorder: The preorder both the antichain and the maximum use.

    Returns:
        The comparison outcome; a violation is reported, never raised.
    """
    plain = list(bf_levels(ts, scheduler, max_iters))
    pruned = list(acbf_levels(ts, scheduler, max_iters, preorder=preorder))

    compared = 0
    for level, (reached, retained) in enumerate(
        zip_longest(plain, pruned, fillvalue=None)
    ):
        reached = plain[-1] if reached is None else reached
        retained = pruned[-1] if retained is None else retained
        expected = max_elements(reached, preorder).elements
        compared += 1

        if expected != retained:
            logger.debug(
                "Lockstep divergence at level %d: %d expected, %d retained",
                level,
                len(expected),
                len(retained),
            )
            return LockstepResult(False, compared, level, expected, retained)

    return LockstepResult(True, compared)


def engine_lockstep_verify(
    ts: TaskSet, scheduler: Scheduler, *, preorder: IdlePreorder = IDLE_PREORDER
) -> LockstepResult:
    """Compare the antichain engine's working set after each level with Max(Rk).

    Unlike lockstep_verify, this observes the incremental engine itself. Levels
    are compared until the engine halts, so a reachable failure ends the
    comparison early.

    Returns:
        The comparison outcome; a violation is reported, never raised.
    """
    plain = list(bf_levels(ts, scheduler))
    retained: list[frozenset[SystemState]] = [plain[0]]

    def observe(level: int, elements: frozenset[SystemState]) -> None:
        retained.append(elements)

    acbf_reach(ts, scheduler, preorder=preorder, on_level=observe)

    for level, elements in enumerate(retained):
        reached = plain[min(level, len(plain) - 1)]
        expected = max_elements(reached, preorder).elements
        if expected != elements:
            logger.debug(
                "Engine divergence at level %d: %d expected, %d retained",
                level,
                len(expected),
                len(elements),
            )
            return LockstepResult(False, level + 1, level, expected, elements)

    return LockstepResult(True, len(retained))
