"""Checkers for the work-conserving and memoryless scheduler properties."""

from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

from schedreach.automaton import SystemState, active

from .base import Scheduler

ActiveView = tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class PropertyCheck:
    """Outcome of a property check, with the first counterexample found."""

    holds: bool
    counterexample: tuple[SystemState, ...] | None = None

    def __bool__(self) -> bool:
        """Return True if the property holds."""
        return self.holds


def check_work_conserving(
    scheduler: Scheduler, states: Iterable[SystemState]
) -> PropertyCheck:
    """Check |run(S)| = min(m, |active(S)|) on every sampled state."""
    for state in states:
        if len(scheduler.run(state)) != min(scheduler.m, len(active(state))):
            return PropertyCheck(False, (state,))

    return PropertyCheck(True)


def check_memoryless(
    scheduler: Scheduler, pairs: Iterable[tuple[SystemState, SystemState]]
) -> PropertyCheck:
    """Check that run agrees on states that coincide on their active tasks.

    Pairs that do not have the same active tasks with the same nat and rct are
    outside the property's premise and are skipped.
    """
    for first, second in pairs:
        if _active_view(first) != _active_view(second):
            continue

        if scheduler.run(first) != scheduler.run(second):
            return PropertyCheck(False, (first, second))

    return PropertyCheck(True)


def memoryless_pairs(
    states: Iterable[SystemState],
) -> Iterator[tuple[SystemState, SystemState]]:
    """Yield every pair of distinct states that coincide on their active tasks."""
    groups: dict[ActiveView, list[SystemState]] = defaultdict(list)
    for state in states:
        groups[_active_view(state)].append(state)

    for group in groups.values():
        yield from combinations(group, 2)


def _active_view(state: SystemState) -> ActiveView:
    # The part of a state a memoryless scheduler may look at.
    return tuple(
        (i, state.nat[i], state.rct[i]) for i in range(len(state)) if state.rct[i] > 0
    )
