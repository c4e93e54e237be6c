"""Explicit construction of the reachable automaton, and its DOT rendering.

Only meant for small task sets: the search engines never build this graph.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from .automaton import SystemState, initial_state, is_fail, post_transitions
from .errors import ResourceLimitError
from .schedulers import Scheduler
from .taskset import TaskSet

RUN_LABEL = "Run"

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Transition:
    """One automaton edge: a request transition followed by a clock tick."""

    source: SystemState
    requests: frozenset[int]
    requested: SystemState
    """State after the request transition; equals source when nothing is requested."""

    target: SystemState


@dataclass(frozen=True)
class AutomatonGraph:
    """The part of the automaton reachable from the initial state."""

    taskset: TaskSet
    scheduler: str
    states: tuple[SystemState, ...]
    """Reachable states, in breadth-first discovery order."""

    transitions: tuple[Transition, ...]

    @cached_property
    def nodes(self) -> tuple[SystemState, ...]:
        """Return the reachable states followed by the intermediate request states."""
        nodes = dict.fromkeys(self.states)
        nodes.update(dict.fromkeys(t.requested for t in self.transitions))
        return tuple(nodes)

    @cached_property
    def edges(self) -> tuple[tuple[SystemState, str, SystemState], ...]:
        """Return the distinct labelled edges of the graph.

        A non-empty request becomes an edge labelled with the requesting tasks
        into the intermediate state, followed by a "Run" edge out of it.
        """
        edges: dict[tuple[SystemState, str, SystemState], None] = {}
        for transition in self.transitions:
            if transition.requests:
                label = request_label(self.taskset, transition.requests)
                edges[(transition.source, label, transition.requested)] = None
            edges[(transition.requested, RUN_LABEL, transition.target)] = None
        return tuple(edges)

    @cached_property
    def failures(self) -> frozenset[SystemState]:
        """Return the failure states among the nodes."""
        return frozenset(node for node in self.nodes if is_fail(self.taskset, node))


def request_label(ts: TaskSet, requests: frozenset[int]) -> str:
    """Render a request set, eg. "{τ1,τ2}"."""
    return "{" + ",".join(ts[i].label for i in sorted(requests)) + "}"


def build_full_automaton(
    ts: TaskSet, scheduler: Scheduler, limit: int | None = None
) -> AutomatonGraph:
    """Enumerate every state and edge reachable from the initial state.

    Args:
        ts: The task set.
        scheduler: The scheduler defining the clock-tick transitions.
        limit: Maximum number of reachable states.

    Raises:
        ResourceLimitError: More than limit states are reachable.
    """
    start = initial_state(ts)
    seen: dict[SystemState, None] = {start: None}
    transitions: list[Transition] = []
    frontier = [start]

    while frontier:
        added: list[SystemState] = []
        for state in frontier:
            for requests, requested, target in post_transitions(state, scheduler):
                transitions.append(Transition(state, requests, requested, target))
                if target in seen:
                    continue

                seen[target] = None
                added.append(target)
                if limit is not None and len(seen) > limit:
                    raise ResourceLimitError(
                        f"More than {limit} reachable states; raise the limit "
                        "or analyze the set with a search engine instead"
                    )
        frontier = added

    logger.debug(
        "Built automaton with %d states and %d transitions",
        len(seen),
        len(transitions),
    )
    return AutomatonGraph(ts, scheduler.name, tuple(seen), tuple(transitions))


def to_dot(graph: AutomatonGraph) -> str:
    """Render a graph in Graphviz DOT syntax.

    Failure states are drawn as double circles and an invisible point marks
    the initial state.
    """
    ids = {node: f"s{number}" for number, node in enumerate(graph.nodes)}
    lines = [
        "digraph automaton {",
        "  rankdir=LR;",
        '  node [shape="circle" fontname="monospace"];',
        '  start [shape="point" width=.05 height=.05];',
    ]

    for node, node_id in ids.items():
        shape = ' shape="doublecircle"' if node in graph.failures else ""
        lines.append(f'  {node_id} [label="{node}"{shape}];')

    lines.append(f"  start -> {ids[graph.states[0]]};")
    lines.extend(
        f'  {ids[source]} -> {ids[target]} [label="{label}"];'
        for source, label, target in graph.edges
    )
    lines.append("}")
    return "\n".join(lines) + "\n"
