"""Schedulers."""

from schedreach.taskset import TaskSet

from .base import PriorityScheduler, Scheduler
from .checks import (
    PropertyCheck,
    check_memoryless,
    check_work_conserving,
    memoryless_pairs,
)
from .dm import DMScheduler
from .edf import EDFScheduler, ttd

SCHEDULERS: dict[str, type[Scheduler]] = {
    EDFScheduler.name: EDFScheduler,
    DMScheduler.name: DMScheduler,
}
"""Schedulers selectable by name."""


def get_scheduler(name: str, taskset: TaskSet) -> Scheduler:
    """Instantiate the scheduler registered under name for a task set."""
    try:
        return SCHEDULERS[name](taskset)
    except KeyError:
        raise ValueError(
            f"Unknown scheduler '{name}', expected one of {', '.join(SCHEDULERS)}"
        ) from None


__all__ = [
    "DMScheduler",
    "EDFScheduler",
    "PriorityScheduler",
    "PropertyCheck",
    "SCHEDULERS",
    "Scheduler",
    "check_memoryless",
    "check_work_conserving",
    "get_scheduler",
    "memoryless_pairs",
    "ttd",
]
