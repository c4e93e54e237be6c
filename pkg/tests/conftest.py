"""Shared fixtures."""

import pytest

from schedreach.schedulers import EDFScheduler
from schedreach.taskset import TaskSet

TWO_TASKS_TEXT = """\
# two tasks on two processors
m 2
task 2 2 1
task 3 3 2
"""


@pytest.fixture
def two_tasks() -> TaskSet:
    """Two tasks on two processors, EDF-schedulable."""
    return TaskSet.from_params([(2, 2, 1), (3, 3, 2)], m=2)


@pytest.fixture
def single_task() -> TaskSet:
    return TaskSet.from_params([(1, 1, 1)], m=1)


@pytest.fixture
def infeasible_task() -> TaskSet:
    """A task whose WCET exceeds its deadline."""
    return TaskSet.from_params([(2, 1, 2)], m=1)


@pytest.fixture
def overloaded() -> TaskSet:
    """Two tasks on one processor; a deadline is missed two ticks in."""
    return TaskSet.from_params([(2, 2, 2), (3, 2, 1)], m=1)


@pytest.fixture
def two_tasks_text() -> str:
    return TWO_TASKS_TEXT


@pytest.fixture
def edf_two_tasks(two_tasks: TaskSet) -> EDFScheduler:
    return EDFScheduler(two_tasks)
