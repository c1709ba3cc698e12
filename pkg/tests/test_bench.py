import csv
import io

from infodd import kernels
from infodd.bench import (
    BenchRow,
    format_table,
    kernel_benchmark,
    run_benchmark,
    to_csv,
)
from infodd.table import DecisionTable, Row, TableSchema


def tiny_table():
    schema = TableSchema.build(
        [("a", ("0", "1")), ("b", ("0", "1", "2"))], ("n", "y")
    )
    rows = [Row((0, 0), 0), Row((0, 1), 1), Row((1, 0), 1), Row((1, 2), 0)]
    return DecisionTable(schema, rows)


def test_run_produces_four_rows_per_dataset():
    rows = run_benchmark([("tiny", tiny_table)], iterations=2)
    assert len(rows) == 4
    assert {(r.algorithm, r.structure) for r in rows} == {
        ("greedy", "DT"), ("greedy", "DD"), ("iter", "DT"), ("iter", "DD"),
    }
    assert all(r.k == 4 and r.error is None for r in rows)
    assert all(r.seconds >= 0 for r in rows)
    assert all(r.nonterminals >= 1 for r in rows)


def test_structure_sizes_are_deterministic_across_runs():
    first = run_benchmark([("tiny", tiny_table)], iterations=3)
    second = run_benchmark([("tiny", tiny_table)], iterations=3)
    strip = lambda rows: [
        (r.dataset, r.algorithm, r.structure, r.nonterminals, r.levels)
        for r in rows
    ]
    assert strip(first) == strip(second)


def test_loader_failure_becomes_a_failed_row_and_run_continues():
    def broken():
        raise OSError("disk on fire")

    rows = run_benchmark([("bad", broken), ("tiny", tiny_table)], iterations=1)
    assert len(rows) == 5
    assert rows[0].dataset == "bad"
    assert rows[0].error == "disk on fire"
    assert rows[0].cell == "failed"
    assert all(r.error is None for r in rows[1:])


def test_format_table_has_grid_and_total_row():
    rows = run_benchmark([("tiny", tiny_table)], iterations=1)
    text = format_table(rows)
    lines = text.splitlines()
    assert lines[0].startswith("dataset")
    assert "greedy DT" in lines[0] and "iter DD" in lines[0]
    assert any(line.startswith("tiny") for line in lines)
    total = next(line for line in lines if line.startswith("Total"))
    assert not total.startswith("Total*")
    # total equals the single dataset's cells
    n = rows[0].nonterminals
    assert f"{n}/" in total


def test_format_table_marks_incomplete_totals():
    def broken():
        raise ValueError("nope")

    rows = run_benchmark([("bad", broken), ("tiny", tiny_table)])
    text = format_table(rows)
    assert "failed: nope" in text
    assert "Total*" in text
    assert "successfully built cells only" in text


def test_csv_round_trips_through_the_csv_module():
    rows = run_benchmark([("tiny", tiny_table)], iterations=2)
    parsed = list(csv.DictReader(io.StringIO(to_csv(rows))))
    assert len(parsed) == 4
    assert parsed[0]["dataset"] == "tiny"
    assert parsed[0]["k"] == "4"
    assert {p["structure"] for p in parsed} == {"DT", "DD"}
    assert all(p["error"] == "" for p in parsed)
    assert int(parsed[0]["nonterminals"]) == rows[0].nonterminals


def test_csv_escapes_error_text():
    row = BenchRow("x", 0, "greedy", "DT", 0, 0, 0.0, "a,b\nc")
    text = to_csv([row])
    assert "a;b c" in text


def test_empty_run_formats_headers_only():
    text = format_table([])
    assert text.splitlines()[0].startswith("dataset")
    assert "Total" in text
    assert to_csv([]).count("\n") == 1


def test_kernel_benchmark_covers_available_backends():
    records = kernel_benchmark([("tiny", tiny_table())], repeats=2)
    assert len(records) == 1
    record = records[0]
    assert record["dataset"] == "tiny"
    assert record["k"] == 4
    assert set(record["timings"]) == set(kernels.available_backends())
    assert all(t >= 0 for t in record["timings"].values())
    if "c" in record["timings"]:
        assert record["speedup"] > 0
