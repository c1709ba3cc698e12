"""Benchmark harness: size/depth/time grid plus a kernel comparison.

For every dataset the grid holds four cells, greedy and iterated
builds in both structures (plain tree, reduced diagram). Each cell
reports N/levels/seconds where N counts non-terminal nodes and the
timing covers induction only, never parsing. The text layout mirrors
the classic presentation including a column-wise Total row; a CSV
form carries the same rows for machines.

The kernel comparison times the conditional-entropy sweep on both
backends (compiled and pure Python) over the same packed inputs.
"""

from __future__ import annotations

import time
from array import array
from dataclasses import dataclass
from typing import Callable, Sequence

from . import kernels
from .diagram import Kind
from .induction import Algorithm, Criterion, InductionConfig, build
from .table import DecisionTable

__all__ = ["BenchRow", "run_benchmark", "format_table", "to_csv", "kernel_benchmark"]


@dataclass(frozen=True)
class BenchRow:
    dataset: str
    k: int
    algorithm: str
    structure: str
    nonterminals: int
    levels: int
    seconds: float
    error: str | None = None

    @property
    def cell(self) -> str:
        if self.error:
            return "failed"
        return f"{self.nonterminals}/{self.levels}/{self.seconds:.2f}"


_STRUCTURES = ((Kind.TREE, "DT"), (Kind.REDUCED, "DD"))


def run_benchmark(
    sources: Sequence[tuple[str, Callable[[], DecisionTable]]],
    iterations: int = 10,
    criterion: Criterion = Criterion.NODES_THEN_LEVELS,
) -> list[BenchRow]:
    """One row per (dataset, algorithm, structure); failures are recorded.

    A dataset whose loader raises contributes a single failed row and
    the run continues. The iterated builds use a nodes-first criterion
    by default, matching size-comparison tables.
    """
    rows: list[BenchRow] = []
    for name, loader in sources:
        try:
            table = loader()
        except Exception as exc:
            rows.append(BenchRow(name, 0, "greedy", "DT", 0, 0, 0.0, str(exc)))
            continue
        for algorithm in (Algorithm.GREEDY, Algorithm.ITER):
            iters = 1 if algorithm is Algorithm.GREEDY else iterations
            for structure, label in _STRUCTURES:
                config = InductionConfig(
                    algorithm=algorithm,
                    iterations=iters,
                    structure=structure,
                    criterion=criterion,
                )
                start = time.perf_counter()
                diagram = build(table, config)
                elapsed = time.perf_counter() - start
                cost = diagram.cost()
                rows.append(
                    BenchRow(
                        name,
                        table.k,
                        algorithm.value,
                        label,
                        cost.nonterminals,
                        cost.levels,
                        elapsed,
                    )
                )
    return rows


def _grid(rows: Sequence[BenchRow]):
    """(dataset, k) in first-seen order and cells[(dataset, algo, structure)]."""
    order: list[tuple[str, int]] = []
    cells: dict[tuple[str, str, str], BenchRow] = {}
    failed: dict[str, str] = {}
    for row in rows:
        if not any(name == row.dataset for name, _ in order):
            order.append((row.dataset, row.k))
        if row.error:
            failed[row.dataset] = row.error
        else:
            cells[(row.dataset, row.algorithm, row.structure)] = row
    return order, cells, failed


_COLUMNS = (("greedy", "DT"), ("greedy", "DD"), ("iter", "DT"), ("iter", "DD"))


def format_table(rows: Sequence[BenchRow]) -> str:
    """Text grid: one line per dataset, N/levels/t cells, Total row."""
    order, cells, failed = _grid(rows)
    header1 = f"{'dataset':<12}{'k':>6}  " + "".join(
        f"{algo + ' ' + structure:>16}" for algo, structure in _COLUMNS
    )
    header2 = f"{'':<12}{'':>6}  " + "".join(
        f"{'N/level/t':>16}" for _ in _COLUMNS
    )
    lines = [header1, header2]
    totals = {col: [0, 0, 0.0] for col in _COLUMNS}
    complete = True
    for dataset, k in order:
        if dataset in failed:
            lines.append(
                f"{dataset:<12}{k:>6}  failed: {failed[dataset]}"
            )
            complete = False
            continue
        cols = []
        for algo, structure in _COLUMNS:
            row = cells.get((dataset, algo, structure))
            if row is None:
                cols.append(f"{'-':>16}")
                complete = False
                continue
            cols.append(f"{row.cell:>16}")
            total = totals[(algo, structure)]
            total[0] += row.nonterminals
            total[1] += row.levels
            total[2] += row.seconds
        lines.append(f"{dataset:<12}{k:>6}  " + "".join(cols))
    total_cells = "".join(
        f"{f'{n}/{lv}/{t:.2f}':>16}" for n, lv, t in
        (totals[col] for col in _COLUMNS)
    )
    label = "Total" if complete else "Total*"
    lines.append(f"{label:<12}{'':>6}  " + total_cells)
    if not complete:
        lines.append("(* totals cover successfully built cells only)")
    return "\n".join(lines) + "\n"


def to_csv(rows: Sequence[BenchRow]) -> str:
    lines = ["dataset,k,algorithm,structure,nonterminals,levels,seconds,error"]
    for row in rows:
        err = (row.error or "").replace(",", ";").replace("\n", " ")
        lines.append(
            f"{row.dataset},{row.k},{row.algorithm},{row.structure},"
            f"{row.nonterminals},{row.levels},{row.seconds:.6f},{err}"
        )
    return "\n".join(lines) + "\n"


def kernel_benchmark(
    sources: Sequence[tuple[str, DecisionTable]], repeats: int = 5
) -> list[dict]:
    """Best-of-N timing of the entropy sweep per backend and dataset.

    Returns one record per dataset with per-backend seconds and the
    pure/compiled speedup when both backends are available.
    """
    backends = kernels.available_backends()
    records = []
    for name, table in sources:
        flat, outputs = table.packed()
        schema = table.schema
        rows = table.row_index()
        cands = array("i", range(schema.n))
        arities = array("i", schema.arities)
        timings: dict[str, float] = {}
        for backend_name, module in backends.items():
            best = float("inf")
            for _ in range(repeats):
                start = time.perf_counter()
                module.conditional_entropies(
                    flat, schema.n, outputs, rows, cands, arities,
                    schema.output_arity,
                )
                best = min(best, time.perf_counter() - start)
            timings[backend_name] = best
        record = {"dataset": name, "k": table.k, "timings": timings}
        if "c" in timings and timings["c"] > 0:
            record["speedup"] = timings["pure"] / timings["c"]
        records.append(record)
    return records
