"""Semantics of the scheduling automaton.

A system state records, for every task, its earliest next arrival time (nat)
relative to the current instant and the remaining computation time (rct) of its
current job. One automaton edge is a request transition (a subset of the
eligible tasks release a job, possibly none) followed by a clock tick under the
scheduler's choice of running tasks.
"""

from collections.abc import Collection, Iterator
from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING

from .errors import PreconditionError
from .taskset import TaskSet

if TYPE_CHECKING:
    from .schedulers import Scheduler


@dataclass(frozen=True, order=True, slots=True)
class SystemState:
    """An automaton state: per-task (nat, rct) vectors.

    Equality, hashing and ordering derive from the two vectors only.
    """

    nat: tuple[int, ...]
    rct: tuple[int, ...]

    def __str__(self) -> str:
        """Return the state in compact notation."""
        return render_state(self)

    def __len__(self) -> int:
        """Return the number of tasks the state describes."""
        return len(self.nat)

    @classmethod
    def from_pairs(cls, *pairs: tuple[int, int]) -> "SystemState":
        """Build a state from per-task (nat, rct) pairs."""
        return cls(tuple(nat for nat, _ in pairs), tuple(rct for _, rct in pairs))

    @classmethod
    def parse(cls, text: str) -> "SystemState":
        """Parse a state written in bracket notation, eg. "[21,32]"."""
        body = text.strip().removeprefix("[").removesuffix("]")
        pairs = []
        for chunk in body.split(","):
            chunk = chunk.strip()
            if len(chunk) != 2 or not chunk.isdigit():
                raise ValueError(f"Invalid state notation: {text!r}")
            pairs.append((int(chunk[0]), int(chunk[1])))
        return cls.from_pairs(*pairs)


def render_state(state: SystemState) -> str:
    """Render a state for logs and witnesses.

    Uses the compact "[αβ,γδ]" notation when every value is a single digit, and
    comma-separated "(nat:rct)" pairs otherwise.
    """
    pairs = list(zip(state.nat, state.rct, strict=True))
    if all(nat < 10 and rct < 10 for nat, rct in pairs):
        return "[" + ",".join(f"{nat}{rct}" for nat, rct in pairs) + "]"
    return ",".join(f"({nat}:{rct})" for nat, rct in pairs)


def initial_state(ts: TaskSet) -> SystemState:
    """Return the all-zero initial state."""
    zeros = (0,) * len(ts)
    return SystemState(zeros, zeros)


def check_state(ts: TaskSet, state: SystemState) -> None:
    """Check a state against the per-task bounds of a task set.

    Raises:
        PreconditionError: The state has the wrong arity or a value out of range.
    """
    if len(state.nat) != len(ts) or len(state.rct) != len(ts):
        raise PreconditionError(
            f"State {state} describes {len(state.nat)} tasks, task set has {len(ts)}"
        )

    for task, nat, rct in zip(ts.tasks, state.nat, state.rct, strict=True):
        if not 0 <= nat <= task.period or not 0 <= rct <= task.wcet:
            raise PreconditionError(
                f"State {state} is out of range for {task.label} "
                f"(nat in 0..{task.period}, rct in 0..{task.wcet})"
            )


def all_states(ts: TaskSet) -> Iterator[SystemState]:
    """Enumerate every state of the task set within the per-task bounds."""
    per_task = [
        [(nat, rct) for nat in range(task.period + 1) for rct in range(task.wcet + 1)]
        for task in ts.tasks
    ]
    for pairs in product(*per_task):
        yield SystemState.from_pairs(*pairs)


def eligible(state: SystemState) -> frozenset[int]:
    """Return the tasks that may release a job (nat = rct = 0)."""
    return frozenset(
        i
        for i, (nat, rct) in enumerate(zip(state.nat, state.rct))
        if nat == 0 and rct == 0
    )


def active(state: SystemState) -> frozenset[int]:
    """Return the tasks with a pending job (rct > 0)."""
    return frozenset(i for i, rct in enumerate(state.rct) if rct > 0)


def laxity(ts: TaskSet, state: SystemState, i: int) -> int:
    """Return nat - (T - D) - rct for task i; may be negative."""
    return state.nat[i] - ts.slacks[i] - state.rct[i]


def is_fail(ts: TaskSet, state: SystemState) -> bool:
    """Return True if some active task has negative laxity.

    Only pending jobs can miss a deadline: an idle task whose nat has dropped
    below T - D has already completed its last job.
    """
    slacks = ts.slacks
    return any(
        rct > 0 and nat - slack - rct < 0
        for nat, rct, slack in zip(state.nat, state.rct, slacks)
    )


def request_successor(
    ts: TaskSet, state: SystemState, reqs: Collection[int]
) -> SystemState:
    """Release a job for every task in reqs.

    Raises:
        PreconditionError: A requesting task is not eligible.
    """
    if not_eligible := set(reqs) - eligible(state):
        labels = ", ".join(ts[i].label for i in sorted(not_eligible))
        raise PreconditionError(f"Tasks {labels} are not eligible in {state}")

    return _request(ts, state, reqs)


def clock_tick_successor(
    ts: TaskSet, state: SystemState, running: Collection[int]
) -> SystemState:
    """Let one time unit elapse while the tasks in running execute.

    Raises:
        PreconditionError: A running task is idle, or more than m tasks run.
    """
    if len(running) > ts.m:
        raise PreconditionError(
            f"{len(running)} tasks cannot run on {ts.m} processor(s)"
        )

    if idle := set(running) - active(state):
        labels = ", ".join(ts[i].label for i in sorted(idle))
        raise PreconditionError(f"Tasks {labels} are idle in {state} and cannot run")

    return _tick(state, running)


def post_transitions(
    state: SystemState, scheduler: "Scheduler"
) -> Iterator[tuple[frozenset[int], SystemState, SystemState]]:
    """Enumerate the edges leaving a state.

    Yields one (requests, request successor, clock-tick successor) triple per
    subset of the eligible tasks, in increasing bitmask order over the sorted
    eligible tasks. Distinct subsets may lead to the same successor.
    """
    ts = scheduler.taskset
    candidates = sorted(eligible(state))
    for mask in range(1 << len(candidates)):
        reqs = frozenset(
            task for bit, task in enumerate(candidates) if mask >> bit & 1
        )
        requested = _request(ts, state, reqs) if reqs else state
        yield reqs, requested, _tick(requested, scheduler.run(requested))


def post(state: SystemState, scheduler: "Scheduler") -> tuple[SystemState, ...]:
    """Return the distinct one-step successors of a state, in generation order."""
    successors = (succ for _, _, succ in post_transitions(state, scheduler))
    return tuple(dict.fromkeys(successors))


def post_set(
    states: Collection[SystemState], scheduler: "Scheduler"
) -> frozenset[SystemState]:
    """Return the union of the successors of every state in a collection."""
    return frozenset(succ for state in states for succ in post(state, scheduler))


def _request(ts: TaskSet, state: SystemState, reqs: Collection[int]) -> SystemState:
    # Request transition, without precondition checks.
    nat = list(state.nat)
    rct = list(state.rct)
    for i in reqs:
        nat[i] = ts.periods[i]
        rct[i] = ts.wcets[i]
    return SystemState(tuple(nat), tuple(rct))


def _tick(state: SystemState, running: Collection[int]) -> SystemState:
    # Clock-tick transition, without precondition checks.
    nat = tuple(value - 1 if value > 0 else 0 for value in state.nat)
    if not running:
        return SystemState(nat, state.rct)
    rct = tuple(
        value - 1 if i in running else value for i, value in enumerate(state.rct)
    )
    return SystemState(nat, rct)
