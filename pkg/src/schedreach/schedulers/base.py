"""Base classes for schedulers."""

from abc import ABC, abstractmethod

from schedreach.automaton import SystemState, active
from schedreach.taskset import TaskSet


class Scheduler(ABC):
    """A deterministic scheduler: maps each state to at most m active tasks to run.

    Schedulers are pure functions of the state they are given; they hold no
    history, so a single instance can be shared between threads.
    """

    name: str
    """Short identifier used on the command line."""

    memoryless: bool = False
    """Whether decisions depend only on the nat/rct of active tasks."""

    def __init__(self, taskset: TaskSet) -> None:
        """Initialize a scheduler.

        Args:
            taskset: The task set being scheduled.
        """
        self._taskset = taskset

    def __repr__(self) -> str:
        """Return a debug representation."""
        return f"{type(self).__name__}(m={self.m}, n={len(self._taskset)})"

    @property
    def taskset(self) -> TaskSet:
        """The task set being scheduled."""
        return self._taskset

    @property
    def m(self) -> int:
        """The number of processors."""
        return self._taskset.m

    @abstractmethod
    def run(self, state: SystemState) -> frozenset[int]:
        """Return the tasks that execute during the next time unit."""


class PriorityScheduler(Scheduler):
    """Global preemptive scheduler running the m highest-priority active tasks.

    Subclasses provide a priority key per active task; smaller keys win and ties
    go to the smaller task index. Only active tasks are ever inspected.
    """

    memoryless = True

    @abstractmethod
    def priority(self, state: SystemState, i: int) -> int:
        """Return the priority key of active task i (smaller runs first)."""

    def run(self, state: SystemState) -> frozenset[int]:
        """Return the min(m, |active|) active tasks with the smallest keys."""
        candidates = active(state)
        if len(candidates) <= self.m:
            return candidates

        ranked = sorted(candidates, key=lambda i: (self.priority(state, i), i))
        return frozenset(ranked[: self.m])
