"""Preemptive global deadline-monotonic."""

from typing_extensions import override

from schedreach.automaton import SystemState

from .base import PriorityScheduler


class DMScheduler(PriorityScheduler):
    """Run the active tasks with the shortest relative deadline.

    Tasks with equal D are ordered by index, whatever their periods.
    """

    name = "dm"

    @override
    def priority(self, state: SystemState, i: int) -> int:
        """Return the relative deadline of task i."""
        return self.taskset.deadlines[i]
