import dataclasses
import json

import pytest
from hypothesis import given, settings

from schedreach import is_schedulable
from schedreach.antichain import IDLE_PREORDER, IdlePreorder, max_elements
from schedreach.automaton import SystemState, initial_state, is_fail, post
from schedreach.graph import build_full_automaton
from schedreach.reachability import (
    ENGINES,
    SearchOptions,
    Verdict,
    acbf_levels,
    acbf_reach,
    bf_levels,
    bf_reach,
    engine_lockstep_verify,
    lockstep_verify,
    report_to_json,
)
from schedreach.schedulers import DMScheduler, EDFScheduler

from strategies import tasksets

S = SystemState.parse

TRACE = SearchOptions(trace=True)


def test_bf_on_schedulable_set(two_tasks, edf_two_tasks):
    report = bf_reach(two_tasks, edf_two_tasks)

    assert report.verdict is Verdict.NOT_REACHABLE
    assert report.schedulable is True
    assert report.states_explored == 6
    assert report.iterations == 3
    assert report.frontier_peak == 3
    assert report.retained_peak == 6
    assert report.states_explored == len(
        build_full_automaton(two_tasks, edf_two_tasks).states
    )


def test_acbf_on_schedulable_set(two_tasks, edf_two_tasks):
    report = acbf_reach(two_tasks, edf_two_tasks)

    assert report.verdict is Verdict.NOT_REACHABLE
    assert report.states_explored == 2
    assert report.iterations == 2
    assert report.retained_peak == 2


def test_single_task(single_task):
    for engine in ENGINES.values():
        report = engine(single_task, EDFScheduler(single_task), None)

        assert report.verdict is Verdict.NOT_REACHABLE
        assert report.states_explored == 1
        assert report.iterations == 1


@pytest.mark.parametrize("engine", [bf_reach, acbf_reach])
def test_infeasible_task(infeasible_task, engine):
    report = engine(infeasible_task, EDFScheduler(infeasible_task), TRACE)

    assert report.verdict is Verdict.REACHABLE
    assert report.schedulable is False
    assert report.iterations == 1
    assert report.states_explored == 2
    assert report.witness == (S("[00]"), S("[11]"))


@pytest.mark.parametrize("engine", [bf_reach, acbf_reach])
def test_overloaded_witness(overloaded, engine):
    report = engine(overloaded, EDFScheduler(overloaded), TRACE)

    assert report.verdict is Verdict.REACHABLE
    assert report.iterations == 2
    assert report.witness == (S("[00,00]"), S("[11,21]"), S("[00,11]"))
    assert report.witness[0] == initial_state(overloaded)
    assert is_fail(overloaded, report.witness[-1])
    for state, successor in zip(report.witness, report.witness[1:]):
        assert successor in post(state, EDFScheduler(overloaded))


def test_no_witness_without_trace(overloaded):
    assert bf_reach(overloaded, EDFScheduler(overloaded)).witness is None


@pytest.mark.parametrize("engine", [bf_reach, acbf_reach])
def test_state_limit_is_inconclusive(two_tasks, edf_two_tasks, engine):
    report = engine(two_tasks, edf_two_tasks, SearchOptions(limit_states=1))

    assert report.verdict is Verdict.INCONCLUSIVE
    assert report.schedulable is None
    assert report.limit == "more than 1 states"
    assert report.summary().startswith("INCONCLUSIVE (more than 1 states)")


def test_reports_are_deterministic(two_tasks, edf_two_tasks):
    def untimed(report):
        return dataclasses.replace(report, wall_time=0.0, cpu_time=0.0)

    for engine in (bf_reach, acbf_reach):
        first = engine(two_tasks, edf_two_tasks, TRACE)
        second = engine(two_tasks, edf_two_tasks, TRACE)

        assert untimed(first) == untimed(second)


@settings(max_examples=60, deadline=None)
@given(ts=tasksets())
def test_engines_agree(ts):
    for scheduler in (EDFScheduler(ts), DMScheduler(ts)):
        plain = bf_reach(ts, scheduler)
        pruned = acbf_reach(ts, scheduler)

        assert plain.verdict == pruned.verdict
        if plain.verdict is Verdict.REACHABLE:
            assert plain.iterations == pruned.iterations
        else:
            assert pruned.states_explored <= plain.states_explored


@settings(max_examples=40, deadline=None)
@given(ts=tasksets())
def test_lockstep_holds(ts):
    result = lockstep_verify(ts, EDFScheduler(ts))

    assert result
    assert result.divergence is None


@settings(max_examples=60, deadline=None)
@given(ts=tasksets())
def test_engine_antichain_matches_maximal_reached_states(ts):
    for scheduler in (EDFScheduler(ts), DMScheduler(ts)):
        result = engine_lockstep_verify(ts, scheduler)

        assert result, (result.divergence, result.expected, result.actual)


def test_engine_level_callbacks(two_tasks, edf_two_tasks):
    plain_levels = []
    pruned_levels = []

    bf_reach(
        two_tasks,
        edf_two_tasks,
        on_level=lambda level, states: plain_levels.append((level, states)),
    )
    acbf_reach(
        two_tasks,
        edf_two_tasks,
        on_level=lambda level, states: pruned_levels.append((level, states)),
    )

    assert [level for level, _ in plain_levels] == [1, 2, 3]
    assert plain_levels[-1][1] == list(bf_levels(two_tasks, edf_two_tasks))[-1]
    assert len(plain_levels[-1][1]) == 6
    assert [level for level, _ in pruned_levels] == [1, 2]
    assert pruned_levels[-1][1] == {S("[00,00]"), S("[00,21]")}
    for level, states in pruned_levels:
        assert states == max_elements(plain_levels[level - 1][1]).elements


def test_engine_lockstep_on_failing_set(overloaded):
    result = engine_lockstep_verify(overloaded, EDFScheduler(overloaded))

    assert result.holds
    assert result.divergence is None


def test_lockstep_on_schedulable_set(two_tasks, edf_two_tasks):
    result = lockstep_verify(two_tasks, edf_two_tasks)

    assert result.holds
    assert result.iterations == 3


def test_levels(two_tasks, edf_two_tasks):
    plain = list(bf_levels(two_tasks, edf_two_tasks))
    pruned = list(acbf_levels(two_tasks, edf_two_tasks))

    assert plain[0] == {S("[00,00]")}
    assert len(plain[-1]) == 6
    assert pruned[0] == {S("[00,00]")}
    assert pruned[-1] == {S("[00,00]"), S("[00,21]")}
    assert max_elements(plain[-1]).elements == pruned[-1]


def test_levels_stop_at_max_iters(two_tasks, edf_two_tasks):
    assert len(list(bf_levels(two_tasks, edf_two_tasks, max_iters=1))) == 2
    assert len(list(acbf_levels(two_tasks, edf_two_tasks, max_iters=1))) == 2


def test_overloaded_first_antichain_level(overloaded):
    levels = acbf_levels(overloaded, EDFScheduler(overloaded))
    next(levels)

    assert next(levels) == {S("[00,00]"), S("[11,00]"), S("[11,21]")}


@settings(max_examples=40, deadline=None)
@given(ts=tasksets())
def test_pruned_states_have_a_reachable_simulator(ts):
    scheduler = EDFScheduler(ts)
    reached = list(bf_levels(ts, scheduler))[-1]
    retained = list(acbf_levels(ts, scheduler))[-1]

    assert retained <= reached
    for state in reached:
        assert any(IDLE_PREORDER(element, state) for element in retained)


def test_mutant_preorder_still_runs(overloaded):
    report = acbf_reach(
        overloaded,
        EDFScheduler(overloaded),
        preorder=IdlePreorder(check_active_nat=False),
    )

    assert report.verdict in (Verdict.REACHABLE, Verdict.NOT_REACHABLE)


def test_report_to_json(overloaded):
    report = bf_reach(overloaded, EDFScheduler(overloaded), TRACE)

    document = json.loads(report_to_json(report))

    assert document["algorithm"] == "bf"
    assert document["scheduler"] == "edf"
    assert document["verdict"] == "reachable"
    assert document["schedulable"] is False
    assert document["witness"] == ["[00,00]", "[11,21]", "[00,11]"]


def test_is_schedulable(two_tasks, overloaded):
    assert is_schedulable(two_tasks)
    assert is_schedulable(two_tasks, "dm")
    assert not is_schedulable(overloaded)
    assert not is_schedulable(overloaded, "dm")
