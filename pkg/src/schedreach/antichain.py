"""The idle-tasks simulation preorder and antichains of maximal states.

A state S1 simulates S2 under the idle-tasks preorder when both have the same
rct vector, agree on the nat of every active task, and every idle task of S1 has
a nat no larger than in S2: S1 can do everything S2 can, only sooner.
"""

from collections.abc import Iterable, Iterator
from itertools import product

from .automaton import SystemState
from .taskset import TaskSet


class IdlePreorder:
    """The idle-tasks preorder, a partial order on system states.

    Setting check_active_nat to False drops the condition that active tasks
    agree on nat. The resulting relation is NOT a simulation; it exists so the
    verification campaigns can show they catch a broken preorder.
    """

    def __init__(self, *, check_active_nat: bool = True) -> None:
        """Initialize the preorder.

        Args:
            check_active_nat: Require equal nat on active tasks.
        """
        self._check_active_nat = check_active_nat

    def __repr__(self) -> str:
        """Return a debug representation."""
        if self._check_active_nat:
            return "IdlePreorder()"
        return "IdlePreorder(check_active_nat=False)"

    def __call__(self, first: SystemState, second: SystemState) -> bool:
        """Alias for simulates."""
        return self.simulates(first, second)

    @property
    def is_mutant(self) -> bool:
        """Return True if the active-nat condition is dropped."""
        return not self._check_active_nat

    def simulates(self, first: SystemState, second: SystemState) -> bool:
        """Return True if first simulates second."""
        # Cheapest discriminating test first
        if first.rct != second.rct:
            return False

        for nat1, nat2, rct in zip(first.nat, second.nat, first.rct):
            if rct == 0:
                if nat1 > nat2:
                    return False
            elif self._check_active_nat and nat1 != nat2:
                return False

        return True

    def simulators(self, ts: TaskSet, state: SystemState) -> Iterator[SystemState]:
        """Enumerate every state of the task set that simulates the given one."""
        choices = []
        for task, nat, rct in zip(ts.tasks, state.nat, state.rct, strict=True):
            if rct == 0:
                choices.append(range(nat + 1))
            elif self._check_active_nat:
                choices.append(range(nat, nat + 1))
            else:
                choices.append(range(task.period + 1))

        for nat_vector in product(*choices):
            yield SystemState(tuple(nat_vector), state.rct)


IDLE_PREORDER = IdlePreorder()
"""The idle-tasks preorder."""


def idle_simulates(first: SystemState, second: SystemState) -> bool:
    """Return True if first simulates second under the idle-tasks preorder."""
    return IDLE_PREORDER.simulates(first, second)


class Antichain:
    """A set of pairwise incomparable states, keeping only maximal ones.

    Elements are grouped by rct vector, since every supported preorder only
    relates states with equal rct; dominance scans stay within one group.
    Within a group, elements keep insertion order.

    An antichain has a single writer; readers may iterate between mutations.
    """

    def __init__(
        self,
        states: Iterable[SystemState] = (),
        preorder: IdlePreorder = IDLE_PREORDER,
    ) -> None:
        """Initialize an antichain.

        Args:
            states: Initial states, reduced to their maximal elements.
            preorder: The preorder defining domination.
        """
        self._preorder = preorder
        self._groups: dict[tuple[int, ...], list[SystemState]] = {}
        self._members: set[SystemState] = set()

        for state in states:
            self.insert(state)

    def __repr__(self) -> str:
        """Return a debug representation."""
        return f"Antichain({sorted(map(str, self))})"

    def __len__(self) -> int:
        """Return the number of elements."""
        return len(self._members)

    def __iter__(self) -> Iterator[SystemState]:
        """Iterate over the elements, group by group."""
        for group in self._groups.values():
            yield from group

    def __contains__(self, state: object) -> bool:
        """Return True if the state is an element (not merely dominated)."""
        return state in self._members

    def __eq__(self, other: object) -> bool:
        """Compare element sets."""
        if not isinstance(other, Antichain):
            return NotImplemented
        return self._members == other._members

    __hash__ = None  # type: ignore[assignment]

    @property
    def preorder(self) -> IdlePreorder:
        """The preorder in use."""
        return self._preorder

    @property
    def elements(self) -> frozenset[SystemState]:
        """Return a snapshot of the elements."""
        return frozenset(self._members)

    def covers(self, state: SystemState) -> bool:
        """Return True if some element simulates the given state."""
        if state in self._members:
            return True

        simulates = self._preorder.simulates
        return any(
            simulates(element, state) for element in self._groups.get(state.rct, ())
        )

    def insert(self, state: SystemState) -> bool:
        """Add a state unless it is dominated, dropping what it dominates.

        Returns:
            True if the state was added, False if an element already simulates it
            (including the state itself).
        """
        if self.covers(state):
            return False

        simulates = self._preorder.simulates
        group = self._groups.setdefault(state.rct, [])
        kept = []
        for element in group:
            if simulates(state, element):
                self._members.discard(element)
            else:
                kept.append(element)

        kept.append(state)
        self._groups[state.rct] = kept
        self._members.add(state)
        return True

    def union(self, other: "Antichain") -> "Antichain":
        """Return the maximal elements of both antichains together."""
        result = self.copy()
        for state in other:
            result.insert(state)
        return result

    def copy(self) -> "Antichain":
        """Return a shallow copy."""
        result = Antichain(preorder=self._preorder)
        result._groups = {rct: list(group) for rct, group in self._groups.items()}
        result._members = set(self._members)
        return result


def max_elements(
    states: Iterable[SystemState], preorder: IdlePreorder = IDLE_PREORDER
) -> Antichain:
    """Return the maximal elements of a finite set of states."""
    return Antichain(states, preorder)
