"""Level-by-level reachable sets, without failure detection.

These generators expose the intermediate sets both engines compute, so they
can be compared against each other. They run to the fixpoint and are only
meant for small instances.
"""

from collections.abc import Iterator

from schedreach.antichain import IDLE_PREORDER, Antichain, IdlePreorder
from schedreach.automaton import SystemState, initial_state, post
from schedreach.schedulers import Scheduler
from schedreach.taskset import TaskSet


def bf_levels(
    ts: TaskSet, scheduler: Scheduler, max_iters: int | None = None
) -> Iterator[frozenset[SystemState]]:
    """Yield R0, R1, ... where each level adds the successors of the last.

    The last level yielded is the fixpoint (or level max_iters).
    """
    start = initial_state(ts)
    reached = {start}
    frontier = [start]
    yield frozenset(reached)

    level = 0
    while frontier and (max_iters is None or level < max_iters):
        level += 1
        added: list[SystemState] = []
        for state in frontier:
            for successor in post(state, scheduler):
                if successor not in reached:
                    reached.add(successor)
                    added.append(successor)

        if added:
            yield frozenset(reached)
        frontier = added


def acbf_levels(
    ts: TaskSet,
    scheduler: Scheduler,
    max_iters: int | None = None,
    *,
    preorder: IdlePreorder = IDLE_PREORDER,
) -> Iterator[frozenset[SystemState]]:
    """Yield the antichains Max(Rk ∪ Post(Rk)), computed literally.

    Every level is rebuilt from scratch from the whole previous level rather
    than from the states it added.
    """
    level_set = Antichain([initial_state(ts)], preorder)
    yield level_set.elements

    level = 0
    while max_iters is None or level < max_iters:
        level += 1
        following = level_set.copy()
        for state in level_set:
            for successor in post(state, scheduler):
                following.insert(successor)

        if following == level_set:
            return

        level_set = following
        yield level_set.elements
