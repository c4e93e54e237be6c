"""Hypothesis strategies for small task sets and states."""

from hypothesis import strategies as st

from schedreach.antichain import IDLE_PREORDER
from schedreach.automaton import SystemState
from schedreach.taskset import TaskSet


@st.composite
def tasksets(
    draw: st.DrawFn, max_tasks: int = 3, max_period: int = 4, max_m: int = 2
) -> TaskSet:
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_tasks))
    params = []
    for _ in range(n):
        period = draw(st.integers(1, max_period))
        wcet = draw(st.integers(1, period))
        deadline = draw(st.integers(wcet, period))
        params.append((period, deadline, wcet))
    return TaskSet.from_params(params, m=m)


@st.composite
def states_of(draw: st.DrawFn, ts: TaskSet) -> SystemState:
    pairs = [
        (draw(st.integers(0, task.period)), draw(st.integers(0, task.wcet)))
        for task in ts.tasks
    ]
    return SystemState.from_pairs(*pairs)


@st.composite
def tasksets_with_states(
    draw: st.DrawFn, max_states: int = 12
) -> tuple[TaskSet, list[SystemState]]:
    ts = draw(tasksets())
    states = draw(st.lists(states_of(ts), min_size=1, max_size=max_states))
    return ts, states


@st.composite
def simulation_chains(
    draw: st.DrawFn, max_tasks: int = 3
) -> tuple[TaskSet, SystemState, SystemState, SystemState]:
    """Draw states low, mid, high where high simulates mid and mid simulates low."""
    ts = draw(tasksets(max_tasks=max_tasks))
    low = draw(states_of(ts))
    mid = draw(st.sampled_from(sorted(IDLE_PREORDER.simulators(ts, low))))
    high = draw(st.sampled_from(sorted(IDLE_PREORDER.simulators(ts, mid))))
    return ts, low, mid, high
