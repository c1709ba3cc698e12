import io
import json
import subprocess
import sys

import pytest

from infodd import datasets
from infodd.cli import main
from infodd.diagram import Diagram


@pytest.fixture()
def cars_path(tmp_path):
    path = tmp_path / "cars.json"
    path.write_text(datasets.cars_json_text(), "utf-8")
    return str(path)


@pytest.fixture()
def diagram_path(tmp_path, cars_path):
    out = tmp_path / "cars-dd.json"
    assert main(["build", "--catalog", cars_path, "--out", str(out)]) == 0
    return str(out)


# -- build -------------------------------------------------------------------

def test_build_writes_diagram_json_to_stdout(cars_path, capsys):
    assert main(["build", "--catalog", cars_path]) == 0
    out, err = capsys.readouterr()
    diagram = Diagram.from_json(out)
    assert diagram.kind.value == "reduced"
    assert "decision nodes" in err


def test_build_out_file_round_trips(diagram_path, cars_table):
    diagram = Diagram.from_json(open(diagram_path).read())
    for row in cars_table.rows:
        assert diagram.evaluate(row.values) == row.output


def test_build_tree_and_iter_variants(cars_path, tmp_path, capsys):
    for extra in (
        ["--structure", "tree"],
        ["--algo", "iter"],
        ["--algo", "iter", "--iters", "3", "--criterion", "nodes,levels"],
        ["--pad-arity", "4"],
    ):
        assert main(["build", "--catalog", cars_path] + extra) == 0
        out, _ = capsys.readouterr()
        Diagram.from_json(out)


def test_build_monks_input(tmp_path, capsys):
    path = tmp_path / "monks-1.test"
    path.write_text(datasets.monks_test_text(1), "utf-8")
    assert main(["build", "--monks", str(path), "--structure", "tree"]) == 0
    out, _ = capsys.readouterr()
    assert Diagram.from_json(out).schema.n == 6


def test_build_csv_requires_schema(tmp_path, capsys):
    csv = tmp_path / "t.csv"
    csv.write_text("a,f\n0,0\n1,1\n", "utf-8")
    with pytest.raises(SystemExit) as err:
        main(["build", "--csv", str(csv)])
    assert err.value.code == 1


def test_build_csv_with_schema(tmp_path, capsys):
    schema_doc = {
        "variables": [{"name": "a", "labels": ["0", "1"]}],
        "outputs": ["n", "y"],
    }
    schema_path = tmp_path / "schema.json"
    schema_path.write_text(json.dumps(schema_doc), "utf-8")
    csv = tmp_path / "t.csv"
    csv.write_text("a,f\n0,0\n1,1\n", "utf-8")
    assert main(
        ["build", "--csv", str(csv), "--schema", str(schema_path)]
    ) == 0
    out, _ = capsys.readouterr()
    assert Diagram.from_json(out).evaluate((1,)) == 1


# -- analyze ---------------------------------------------------------------------

def test_analyze_report_shape(cars_path, capsys):
    assert main(["analyze", "--catalog", cars_path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["catalog"] == "cars"
    assert report["k"] == 19
    assert report["outputs"] == 8
    assert len(report["conditional"]) == 8
    assert report["ranking"][0]["variable"] == "price"
    assert 0 < report["entropy"] <= 3


# -- paths -----------------------------------------------------------------------

def test_paths_emits_one_json_line_per_path(diagram_path, capsys):
    assert main(["paths", "--diagram", diagram_path]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    docs = [json.loads(line) for line in lines]
    diagram = Diagram.from_json(open(diagram_path).read())
    assert len(docs) == len(diagram.paths())
    assert all("constraints" in doc for doc in docs)
    assert any("x" in doc for doc in docs)


# -- bench and perf -----------------------------------------------------------------

def test_bench_grid_and_csv_report(tmp_path, capsys):
    report = tmp_path / "grid.csv"
    code = main([
        "bench",
        "--datasets", str(tmp_path / "data"),
        "--iters", "2",
        "--report", str(report),
    ])
    assert code == 0
    out, err = capsys.readouterr()
    assert "greedy DT" in out and "iter DD" in out
    assert "shuttle" in out and "monks3tr" in out
    assert "Total" in out
    header = report.read_text("utf-8").splitlines()[0]
    assert header.split(",")[:3] == ["dataset", "k", "algorithm"]
    assert "failed" not in err


def test_perf_reports_backends(tmp_path, capsys):
    code = main([
        "perf", "--datasets", str(tmp_path / "data"), "--repeats", "1"
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "active kernel backend:" in out
    assert "speedup" in out


# -- fetch ----------------------------------------------------------------------------

@pytest.fixture()
def mirror(tmp_path):
    src = tmp_path / "mirror"
    src.mkdir()
    for problem in (1, 2, 3):
        (src / f"monks-{problem}.train").write_text(
            datasets.monks_train_text(problem), "utf-8"
        )
        (src / f"monks-{problem}.test").write_text(
            datasets.monks_test_text(problem), "utf-8"
        )
    return src


def test_fetch_downloads_and_pins_checksums(tmp_path, mirror, capsys):
    dest = tmp_path / "fetched"
    base = mirror.as_uri() + "/"
    assert main(["fetch", "--datasets", str(dest), "--base-url", base]) == 0
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) == 6
    lock = json.loads((dest / "checksums.json").read_text("utf-8"))
    assert set(lock) == set(datasets.MONKS_ROWS)

    # same content fetches cleanly a second time
    assert main(["fetch", "--datasets", str(dest), "--base-url", base]) == 0


def test_fetch_rejects_tampered_mirror(tmp_path, mirror, capsys):
    dest = tmp_path / "fetched"
    base = mirror.as_uri() + "/"
    assert main(["fetch", "--datasets", str(dest), "--base-url", base]) == 0
    capsys.readouterr()

    target = mirror / "monks-1.train"
    lines = target.read_text("utf-8").splitlines(keepends=True)
    first = lines[0]
    flipped = ("0" if first[0] == "1" else "1") + first[1:]
    target.write_text(flipped + "".join(lines[1:]), "utf-8")

    assert main(["fetch", "--datasets", str(dest), "--base-url", base]) == 2
    assert "checksum mismatch" in capsys.readouterr().err


def test_fetch_rejects_wrong_row_counts(tmp_path, mirror, capsys):
    truncated = mirror / "monks-1.train"
    lines = truncated.read_text("utf-8").splitlines(keepends=True)
    truncated.write_text("".join(lines[:-3]), "utf-8")
    dest = tmp_path / "fetched"
    code = main(
        ["fetch", "--datasets", str(dest), "--base-url", mirror.as_uri() + "/"]
    )
    assert code == 2
    assert "rows" in capsys.readouterr().err
    assert not (dest / "monks-1.train").exists()


# -- navigate -------------------------------------------------------------------------

def run_navigate(monkeypatch, diagram_path, script):
    monkeypatch.setattr(sys, "stdin", io.StringIO(script))
    return main(["navigate", "--diagram", diagram_path])


def test_navigate_walks_to_a_product(monkeypatch, diagram_path, capsys):
    # price -> "less than 20,000", gear -> automatic: the Primera path
    assert run_navigate(monkeypatch, diagram_path, "0\n1\nq\n") == 0
    out = capsys.readouterr().out
    assert "question 1: price" in out
    assert "resolved: Nissan Primera 2.0SLX" in out


def test_navigate_undo_restart_and_bad_input(monkeypatch, diagram_path, capsys):
    script = "9\nwat\n0\nu\n0\n1\nr\nq\n"
    assert run_navigate(monkeypatch, diagram_path, script) == 0
    out = capsys.readouterr().out
    assert "invalid answer" in out
    assert "enter an option number" in out
    assert "resolved" in out
    assert out.count("question 1: price") >= 3  # start, undo, restart


def test_navigate_eof_exits_cleanly(monkeypatch, diagram_path, capsys):
    assert run_navigate(monkeypatch, diagram_path, "") == 0


# -- serve ------------------------------------------------------------------------------

def test_serve_rejects_mismatched_catalog(tmp_path, diagram_path, capsys):
    other = {
        "name": "toys",
        "variables": [{"name": "a", "labels": ["0", "1"]}],
        "products": [{"id": 0, "label": "t0"}, {"id": 1, "label": "t1"}],
        "entries": [
            {"product": 0, "cells": [[0]]},
            {"product": 1, "cells": [[1]]},
        ],
    }
    path = tmp_path / "toys.json"
    path.write_text(json.dumps(other), "utf-8")
    code = main(
        ["serve", "--diagram", diagram_path, "--catalog", str(path)]
    )
    assert code == 2
    assert "schema" in capsys.readouterr().err


def test_serve_rejects_missing_ui_dir(tmp_path, diagram_path, capsys):
    code = main([
        "serve", "--diagram", diagram_path, "--ui", str(tmp_path / "nope")
    ])
    assert code == 2


# -- exit codes and plumbing ---------------------------------------------------------

def test_missing_input_file_is_exit_2(tmp_path, capsys):
    assert main(["build", "--catalog", str(tmp_path / "nope.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_invalid_json_input_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope", "utf-8")
    assert main(["build", "--catalog", str(bad)]) == 2


def test_usage_errors_exit_1(cars_path):
    for argv in (
        [],
        ["build"],
        ["build", "--catalog", cars_path, "--monks", "x"],
        ["build", "--catalog", cars_path, "--structure", "forest"],
        ["frob"],
    ):
        with pytest.raises(SystemExit) as err:
            main(argv)
        assert err.value.code == 1


def test_bad_criterion_in_bench_is_exit_1(tmp_path, capsys):
    code = main([
        "bench", "--datasets", str(tmp_path), "--criterion", "sideways"
    ])
    assert code == 1


def test_module_entry_point_reports_version():
    proc = subprocess.run(
        [sys.executable, "-m", "infodd", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip().startswith("infodd ")
