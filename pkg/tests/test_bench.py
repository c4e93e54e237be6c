import dataclasses
import io
from fractions import Fraction

import pytest

from schedreach import bench
from schedreach.bench import (
    CSV_COLUMNS,
    BenchOptions,
    BenchRecord,
    bench_one,
    load_corpus,
    run_bench,
    summarize,
    write_csv,
)
from schedreach.errors import ConsistencyError
from schedreach.generator import GenParams, generate, generate_corpus
from schedreach.reachability import Verdict
from schedreach.taskset import serialize_taskset


def test_bench_one(two_tasks):
    record = bench_one("paper", two_tasks, "edf", BenchOptions())

    assert record.verdict is Verdict.NOT_REACHABLE
    assert record.n == 2
    assert record.utilization == Fraction(7, 6)
    assert record.bf_states == 6
    assert record.acbf_states == 2
    assert record.avoided_fraction == pytest.approx(2 / 3)

    row = record.as_row()
    assert row["utilization"] == "7/6"
    assert row["verdict"] == "not_reachable"
    assert row["avoided_fraction"] == "0.6667"


def test_bench_one_unschedulable(overloaded):
    record = bench_one("overloaded", overloaded, "dm", BenchOptions())

    assert record.verdict is Verdict.REACHABLE
    assert record.completed


def test_inconclusive_record(two_tasks, caplog):
    record = bench_one("paper", two_tasks, "edf", BenchOptions(limit_states=1))

    assert record.verdict is Verdict.INCONCLUSIVE
    assert not record.completed
    assert record.avoided_fraction is None
    assert record.as_row()["avoided_fraction"] == ""
    assert "inconclusive" in caplog.text


def test_disagreement_is_an_error(two_tasks, monkeypatch):
    def always_reachable(ts, scheduler, options=None):
        report = bench.bf_reach(ts, scheduler, options)
        return dataclasses.replace(report, verdict=Verdict.REACHABLE)

    monkeypatch.setattr(bench, "acbf_reach", always_reachable)

    with pytest.raises(ConsistencyError, match="paper"):
        bench_one("paper", two_tasks, "edf", BenchOptions())


def test_antichain_engine_adding_more_states_is_an_error(two_tasks, monkeypatch):
    def bloated(ts, scheduler, options=None):
        report = bench.bf_reach(ts, scheduler, options)
        return dataclasses.replace(report, states_explored=report.states_explored + 1)

    monkeypatch.setattr(bench, "acbf_reach", bloated)

    with pytest.raises(ConsistencyError, match="acbf added 7 states on paper"):
        bench_one("paper", two_tasks, "edf", BenchOptions())


def test_csv_header_only():
    stream = io.StringIO()
    write_csv([], stream)

    assert stream.getvalue() == ",".join(CSV_COLUMNS) + "\n"


def test_csv_rows(two_tasks):
    stream = io.StringIO()
    write_csv([bench_one("paper", two_tasks, "edf", BenchOptions())], stream)

    header, row = stream.getvalue().splitlines()
    assert header.split(",") == list(CSV_COLUMNS)
    assert row.startswith("paper,2,7/6,not_reachable,6,2,")
    assert row.endswith(",0.6667")


def test_parallel_run_matches_sequential():
    sets = [
        (f"set-{i:05d}", ts)
        for i, ts in enumerate(generate(GenParams(count=6, tmax=4, m=1, seed=2)))
    ]

    def untimed(records):
        return [
            dataclasses.replace(record, bf_time=0.0, acbf_time=0.0)
            for record in records
        ]

    sequential = run_bench(sets, "edf", BenchOptions(jobs=1))
    parallel = run_bench(list(reversed(sets)), "edf", BenchOptions(jobs=3))

    assert [record.set_id for record in parallel] == [set_id for set_id, _ in sets]
    assert untimed(sequential) == untimed(parallel)


def test_load_corpus_from_manifest(tmp_path):
    generate_corpus(GenParams(count=3, tmax=4, m=1, seed=4), tmp_path)
    (tmp_path / "stray.txt").write_text("not a task set", encoding="utf-8")

    sets = load_corpus(tmp_path)

    assert [set_id for set_id, _ in sets] == ["set-00000", "set-00001", "set-00002"]


def test_load_corpus_without_manifest(tmp_path, two_tasks, overloaded):
    (tmp_path / "b.txt").write_text(serialize_taskset(two_tasks), encoding="utf-8")
    (tmp_path / "a.txt").write_text(serialize_taskset(overloaded), encoding="utf-8")

    assert load_corpus(tmp_path) == [("a", overloaded), ("b", two_tasks)]


def _record(set_id, verdict, bf_states=10, acbf_states=5, bf_time=2.0, acbf_time=1.0):
    return BenchRecord(
        set_id=set_id,
        n=3,
        utilization=Fraction(1),
        verdict=verdict,
        bf_states=bf_states,
        acbf_states=acbf_states,
        bf_time=bf_time,
        acbf_time=acbf_time,
    )


def test_summarize():
    summary = summarize(
        [
            _record("a", Verdict.NOT_REACHABLE, acbf_states=5),
            _record("b", Verdict.NOT_REACHABLE, acbf_states=9, acbf_time=3.0),
            _record("c", Verdict.REACHABLE, acbf_states=10),
            _record("d", Verdict.INCONCLUSIVE),
        ]
    )

    assert summary.records == 4
    assert summary.inconclusive == 1
    assert summary.mean_avoided == pytest.approx(0.2)
    assert summary.mean_avoided_by_verdict[Verdict.NOT_REACHABLE] == pytest.approx(0.3)
    assert summary.mean_avoided_by_verdict[Verdict.REACHABLE] == 0
    assert summary.acbf_slower == ("b",)
    assert summary.lines()[0] == "4 sets, 1 inconclusive"
    assert summary.lines()[1] == "mean avoided fraction: 20.0%"


def test_summarize_nothing_completed():
    summary = summarize([_record("d", Verdict.INCONCLUSIVE)])

    assert summary.mean_avoided is None
    assert "n/a" in summary.lines()[1]
