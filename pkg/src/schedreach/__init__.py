"""Exact schedulability analysis of sporadic task sets on multiprocessors."""

__all__ = [
    "Antichain",
    "IdlePreorder",
    "ReachReport",
    "SearchOptions",
    "SystemState",
    "Task",
    "TaskSet",
    "Verdict",
    "acbf_reach",
    "bf_reach",
    "get_scheduler",
    "is_schedulable",
    "parse_taskset",
]

from .antichain import Antichain, IdlePreorder
from .automaton import SystemState
from .reachability import ReachReport, SearchOptions, Verdict, acbf_reach, bf_reach
from .schedulers import get_scheduler
from .taskset import Task, TaskSet, parse_taskset


def is_schedulable(ts: TaskSet, scheduler: str = "edf") -> bool:
    """Return True if no deadline can ever be missed under the named scheduler.

    Runs the antichain engine without limits.
    """
    report = acbf_reach(ts, get_scheduler(scheduler, ts))
    return report.verdict is Verdict.NOT_REACHABLE
