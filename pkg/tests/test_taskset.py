import logging
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schedreach.errors import TaskConstraintError, TaskSetSyntaxError
from schedreach.taskset import (
    Task,
    TaskSet,
    integer_scale_factor,
    parse_taskset,
    serialize_taskset,
    utilization,
)

from strategies import tasksets


def test_parse_example(two_tasks_text, two_tasks):
    ts = parse_taskset(two_tasks_text)

    assert ts == two_tasks
    assert ts.m == 2
    assert [task.params for task in ts.tasks] == [(2, 2, 1), (3, 3, 2)]
    assert [task.label for task in ts.tasks] == ["τ1", "τ2"]


def test_parse_ignores_comments_and_blank_lines():
    ts = parse_taskset("\n# header\n\nm 1  # one cpu\n\ntask 4 3 1 # first\n")

    assert ts.m == 1
    assert ts[0].params == (4, 3, 1)


def test_parse_reports_line_and_column():
    with pytest.raises(TaskSetSyntaxError) as exc_info:
        parse_taskset("m 2\ntask 2 x 1\n")

    assert exc_info.value.line == 2
    assert exc_info.value.column == 8
    assert "line 2, column 8" in str(exc_info.value)


def test_parse_requires_processor_line_first():
    with pytest.raises(TaskSetSyntaxError) as exc_info:
        parse_taskset("task 1 1 1\n")

    assert exc_info.value.line == 1
    assert exc_info.value.column == 1


def test_parse_rejects_wrong_argument_count():
    with pytest.raises(TaskSetSyntaxError) as exc_info:
        parse_taskset("m 2\ntask 2 2\n")

    assert exc_info.value.line == 2
    assert "got 2" in str(exc_info.value)


def test_parse_rejects_unknown_keyword():
    with pytest.raises(TaskSetSyntaxError) as exc_info:
        parse_taskset("m 2\njob 2 2 1\n")

    assert exc_info.value.column == 1


def test_parse_rejects_negative_numbers():
    with pytest.raises(TaskSetSyntaxError):
        parse_taskset("m 1\ntask 2 -1 1\n")


def test_parse_rejects_empty_set():
    with pytest.raises(TaskConstraintError):
        parse_taskset("m 1\n")


def test_parse_rejects_missing_processor_line():
    with pytest.raises(TaskSetSyntaxError):
        parse_taskset("# nothing\n")


def test_deadline_above_period_is_rejected():
    with pytest.raises(TaskConstraintError, match="τ1"):
        parse_taskset("m 1\ntask 2 3 1\n")


def test_zero_values_are_rejected():
    with pytest.raises(TaskConstraintError, match="positive"):
        parse_taskset("m 1\ntask 0 0 0\n")

    with pytest.raises(TaskConstraintError, match="Processor count"):
        parse_taskset("m 0\ntask 1 1 1\n")


def test_infeasible_task_needs_opt_in(caplog):
    text = "m 1\ntask 3 3 1\ntask 2 1 2\n"

    with pytest.raises(TaskConstraintError, match="τ2"):
        parse_taskset(text)

    with caplog.at_level(logging.WARNING):
        ts = parse_taskset(text, allow_infeasible=True)

    assert ts.infeasible_tasks == [ts[1]]
    assert "τ2" in caplog.text


def test_serialize_parses_back(two_tasks):
    text = serialize_taskset(two_tasks)

    assert text == "m 2\ntask 2 2 1\ntask 3 3 2\n"
    assert parse_taskset(text) == two_tasks


def test_utilization_is_exact(two_tasks):
    assert utilization(two_tasks) == Fraction(7, 6)


def test_integer_scale_factor(two_tasks):
    assert integer_scale_factor(two_tasks) == 1
    assert integer_scale_factor(two_tasks.scaled(3)) == 3
    assert integer_scale_factor(TaskSet.from_params([(4, 4, 2), (6, 6, 2)], m=1)) == 2


def test_vectors(two_tasks):
    assert two_tasks.periods == (2, 3)
    assert two_tasks.deadlines == (2, 3)
    assert two_tasks.wcets == (1, 2)
    assert two_tasks.slacks == (0, 0)
    assert two_tasks.tmax == 3
    assert two_tasks.cmax == 2


def test_multiset_ignores_order():
    first = TaskSet.from_params([(3, 2, 1), (2, 2, 1)], m=1)
    second = TaskSet.from_params([(2, 2, 1), (3, 2, 1)], m=1)

    assert first != second
    assert first.multiset == second.multiset


def test_task_indices_must_match_positions():
    with pytest.raises(TaskConstraintError):
        TaskSet((Task(2, 2, 1, index=1),), m=1)


def test_feasible():
    assert Task(3, 2, 2).feasible
    assert not Task(3, 1, 2).feasible


@settings(max_examples=100, deadline=None)
@given(ts=tasksets(max_tasks=4, max_period=6, max_m=4))
def test_serialize_round_trip(ts):
    assert parse_taskset(serialize_taskset(ts)) == ts


@settings(max_examples=100, deadline=None)
@given(ts=tasksets(max_tasks=4, max_period=6), factor=st.integers(1, 4))
def test_scaling_keeps_utilization(ts, factor):
    scaled = ts.scaled(factor)

    assert utilization(scaled) == utilization(ts)
    assert integer_scale_factor(scaled) == factor * integer_scale_factor(ts)
