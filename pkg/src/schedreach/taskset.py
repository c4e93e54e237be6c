"""Sporadic task model: tasks, task sets and the task-set file format.

A task-set file is UTF-8 text. The first non-comment line is ``m <int>``, every
following line is ``task <T> <D> <C>``. ``#`` starts a comment and blank lines
are ignored::

    # two tasks on two processors
    m 2
    task 2 2 1
    task 3 3 2
"""

import logging
import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import TaskConstraintError, TaskSetSyntaxError

TOKEN_PATTERN = re.compile(r"\S+")
INTEGER_PATTERN = re.compile(r"[0-9]+")

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Task:
    """A sporadic task with constrained deadline."""

    period: int
    """Minimum interarrival time T."""

    deadline: int
    """Relative deadline D."""

    wcet: int
    """Worst-case execution time C."""

    index: int = 0
    """0-based position in the task set, fixes tie-breaking order."""

    def __post_init__(self) -> None:
        """Validate the structural constraints of the task."""
        for name in ("period", "deadline", "wcet"):
            if getattr(self, name) <= 0:
                raise TaskConstraintError(f"{self.label}: {name} must be positive")

        if self.deadline > self.period:
            raise TaskConstraintError(
                f"{self.label}: deadline D={self.deadline} exceeds period "
                f"T={self.period} (constrained deadlines require D <= T)"
            )

    @property
    def label(self) -> str:
        """Return the 1-based display name of the task, eg. "τ1"."""
        return f"τ{self.index + 1}"

    @property
    def params(self) -> tuple[int, int, int]:
        """Return the (T, D, C) triple."""
        return (self.period, self.deadline, self.wcet)

    @property
    def feasible(self) -> bool:
        """Return True if a job can complete in isolation (C <= D)."""
        return self.wcet <= self.deadline


@dataclass(frozen=True)
class TaskSet:
    """An ordered set of sporadic tasks to be scheduled on m processors."""

    tasks: tuple[Task, ...]
    m: int = field(kw_only=True)

    def __post_init__(self) -> None:
        """Validate the task set invariants."""
        if not self.tasks:
            raise TaskConstraintError("A task set needs at least one task")

        if self.m <= 0:
            raise TaskConstraintError(f"Processor count m={self.m} must be positive")

        for position, task in enumerate(self.tasks):
            if task.index != position:
                raise TaskConstraintError(
                    f"Task at position {position} has index {task.index}"
                )

    @classmethod
    def from_params(
        cls, params: Iterable[Sequence[int]], *, m: int
    ) -> "TaskSet":
        """Build a task set from (T, D, C) triples, in order."""
        tasks = tuple(
            Task(period, deadline, wcet, index)
            for index, (period, deadline, wcet) in enumerate(params)
        )
        return cls(tasks, m=m)

    def __len__(self) -> int:
        """Return the number of tasks."""
        return len(self.tasks)

    def __getitem__(self, index: int) -> Task:
        """Return the task at the given index."""
        return self.tasks[index]

    @cached_property
    def periods(self) -> tuple[int, ...]:
        """Per-task T."""
        return tuple(task.period for task in self.tasks)

    @cached_property
    def deadlines(self) -> tuple[int, ...]:
        """Per-task D."""
        return tuple(task.deadline for task in self.tasks)

    @cached_property
    def wcets(self) -> tuple[int, ...]:
        """Per-task C."""
        return tuple(task.wcet for task in self.tasks)

    @cached_property
    def slacks(self) -> tuple[int, ...]:
        """Per-task T - D, the offset between next arrival and deadline."""
        return tuple(task.period - task.deadline for task in self.tasks)

    @property
    def tmax(self) -> int:
        """Return the largest period."""
        return max(self.periods)

    @property
    def cmax(self) -> int:
        """Return the largest WCET."""
        return max(self.wcets)

    def scaled(self, factor: int) -> "TaskSet":
        """Return a copy with every T, D and C multiplied by factor."""
        if factor < 1:
            raise ValueError("Scale factor must be a positive integer")

        return TaskSet.from_params(
            (tuple(value * factor for value in task.params) for task in self.tasks),
            m=self.m,
        )

    @property
    def multiset(self) -> tuple[tuple[int, int, int], ...]:
        """Return the (T, D, C) triples sorted, identifying the set up to renaming."""
        return tuple(sorted(task.params for task in self.tasks))

    @property
    def infeasible_tasks(self) -> list[Task]:
        """Return the tasks whose WCET exceeds their deadline."""
        return [task for task in self.tasks if not task.feasible]


def utilization(ts: TaskSet) -> Fraction:
    """Return the exact total utilization, the sum of C/T."""
    return sum((Fraction(task.wcet, task.period) for task in ts.tasks), Fraction(0))


def integer_scale_factor(ts: TaskSet) -> int:
    """Return the gcd of every T, D and C of the set.

    A value k > 1 means the whole set can be scaled down by k without changing
    its behaviour (up to time granularity).
    """
    return math.gcd(*(value for task in ts.tasks for value in task.params))


def parse_taskset(text: str, *, allow_infeasible: bool = False) -> TaskSet:
    """Parse the content of a task-set file.

    Args:
        text: The file content.
        allow_infeasible: Accept tasks with C > D, logging a warning instead of
            rejecting the set.

    Returns:
        The validated task set, tasks in file order.

    Raises:
        TaskSetSyntaxError: The content is not in the task-set format.
        TaskConstraintError: A task or the set violates a model constraint.
    """
    m: int | None = None
    params: list[tuple[int, int, int]] = []

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        tokens = [
            (match.group(0), match.start() + 1)
            for match in TOKEN_PATTERN.finditer(line)
        ]
        if not tokens:
            continue

        keyword, column = tokens[0]
        if m is None:
            if keyword != "m":
                raise TaskSetSyntaxError(
                    f"expected 'm <processors>', got '{keyword}'", line_no, column
                )
            (m,) = _parse_ints(tokens, 1, line_no)
        elif keyword == "task":
            period, deadline, wcet = _parse_ints(tokens, 3, line_no)
            params.append((period, deadline, wcet))
        else:
            raise TaskSetSyntaxError(
                f"expected 'task <T> <D> <C>', got '{keyword}'", line_no, column
            )

    if m is None:
        raise TaskSetSyntaxError("missing 'm <processors>' line", 1, 1)

    if not params:
        raise TaskConstraintError("A task set needs at least one task")

    ts = TaskSet.from_params(params, m=m)

    for task in ts.infeasible_tasks:
        message = (
            f"{task.label}: WCET C={task.wcet} exceeds deadline D={task.deadline}"
        )
        if not allow_infeasible:
            raise TaskConstraintError(message)
        logger.warning("%s; accepted because infeasible tasks are allowed", message)

    return ts


def serialize_taskset(ts: TaskSet) -> str:
    """Render a task set in the task-set file format."""
    lines = [f"m {ts.m}"]
    lines.extend(f"task {task.period} {task.deadline} {task.wcet}" for task in ts.tasks)
    return "\n".join(lines) + "\n"


def _parse_ints(
    tokens: list[tuple[str, int]], expected: int, line_no: int
) -> list[int]:
    # Parse the arguments following the keyword as positive integers.
    keyword, _ = tokens[0]
    args = tokens[1:]
    if len(args) != expected:
        column = args[expected][1] if len(args) > expected else tokens[-1][1]
        raise TaskSetSyntaxError(
            f"'{keyword}' takes {expected} integer argument(s), got {len(args)}",
            line_no,
            column,
        )

    values = []
    for token, column in args:
        if not INTEGER_PATTERN.fullmatch(token):
            raise TaskSetSyntaxError(
                f"expected a non-negative integer, got '{token}'", line_no, column
            )
        values.append(int(token))

    return values
