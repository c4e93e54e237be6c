"""Preemptive global earliest-deadline-first."""

from typing_extensions import override

from schedreach.automaton import SystemState
from schedreach.errors import PreconditionError
from schedreach.taskset import TaskSet

from .base import PriorityScheduler


def ttd(ts: TaskSet, state: SystemState, i: int) -> int:
    """Return the time to the absolute deadline of task i's current job.

    Raises:
        PreconditionError: Task i is idle, so it has no pending deadline.
    """
    if state.rct[i] == 0:
        raise PreconditionError(f"{ts[i].label} is idle in {state} and has no deadline")

    return state.nat[i] - ts.slacks[i]


class EDFScheduler(PriorityScheduler):
    """Run the active jobs closest to their absolute deadline."""

    name = "edf"

    @override
    def priority(self, state: SystemState, i: int) -> int:
        """Return the time to deadline of task i."""
        return state.nat[i] - self.taskset.slacks[i]
