import time
from pathlib import Path

import pytest

import _report
from infodd import datasets
from infodd.bench import run_benchmark
from infodd.induction import Criterion


@pytest.fixture(scope="session")
def cars_catalog():
    return datasets.cars_catalog()


@pytest.fixture(scope="session")
def cars_table():
    return datasets.cars_table()


@pytest.fixture(scope="session")
def dataset_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("datasets")
    datasets.ensure_datasets(directory)
    return directory


@pytest.fixture(scope="session")
def bench_run(dataset_dir):
    """Timed benchmark grid over the full suite; shared by several tests."""
    sources = [
        (name, (lambda n=name: datasets.load_dataset(n, dataset_dir)))
        for name in datasets.BENCH_DATASETS
    ]
    start = time.perf_counter()
    rows = run_benchmark(sources, iterations=10,
                         criterion=Criterion.NODES_THEN_LEVELS)
    elapsed = time.perf_counter() - start
    return rows, elapsed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _report.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    lines = []
    for name, ok, detail in _report.RESULTS:
        line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
        terminalreporter.write_line(line)
        lines.append(line)
    report = Path(__file__).resolve().parent.parent / "acceptance_report.txt"
    report.write_text("\n".join(lines) + "\n", "utf-8")
