"""Command-line interface.

Subcommands: build, analyze, bench, paths, serve, navigate, fetch,
perf. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, bench, datasets, entropy, kernels
from .diagram import Diagram
from .errors import DataError, InfoddError
from .induction import (
    Algorithm,
    Criterion,
    InductionConfig,
    build as induce,
    parse_structure,
)
from .navigator import Session
from .server import make_server, serve_forever
from .table import (
    Consistency,
    DecisionTable,
    TableSchema,
    load_catalog,
    pad_table,
    parse_monks,
    parse_table_csv,
)

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_input_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--catalog", metavar="FILE", help="catalog JSON document")
    group.add_argument("--csv", metavar="FILE", help="decision table CSV")
    group.add_argument("--monks", metavar="FILE", help="Monk's format file")
    parser.add_argument(
        "--schema", metavar="FILE", help="schema JSON (required with --csv)"
    )
    parser.add_argument(
        "--consistency",
        choices=["strict", "majority"],
        default="strict",
        help="how to treat contradictory rows (default: strict)",
    )


def _load_input(parser: _Parser, args) -> tuple[DecisionTable, str]:
    """Load the table named by the input flags; returns (table, name)."""
    consistency = Consistency(args.consistency)
    if args.csv and not args.schema:
        parser.error("--csv requires --schema")
    if args.catalog:
        catalog = load_catalog(Path(args.catalog).read_text("utf-8"))
        return catalog.expand(consistency), catalog.name
    if args.csv:
        schema_doc = json.loads(Path(args.schema).read_text("utf-8"))
        schema = TableSchema.from_doc(schema_doc)
        text = Path(args.csv).read_text("utf-8")
        return parse_table_csv(text, schema, consistency), Path(args.csv).stem
    text = Path(args.monks).read_text("utf-8")
    return parse_monks(text, consistency), Path(args.monks).stem


def _config_from_args(parser: _Parser, args) -> InductionConfig:
    try:
        algorithm = Algorithm(args.algo)
        iterations = args.iters if args.iters is not None else (
            1 if algorithm is Algorithm.GREEDY else 10
        )
        return InductionConfig(
            algorithm=algorithm,
            iterations=iterations,
            structure=parse_structure(args.structure),
            criterion=Criterion.parse(args.criterion),
            inconsistency=Consistency(args.consistency),
        )
    except ValueError as exc:
        parser.error(str(exc))


# -- subcommands -----------------------------------------------------------

def _cmd_build(parser: _Parser, args) -> int:
    table, _ = _load_input(parser, args)
    if args.pad_arity:
        table = pad_table(table, args.pad_arity, args.pad_arity)
    config = _config_from_args(parser, args)
    diagram = induce(table, config)
    document = diagram.to_json()
    if args.out:
        Path(args.out).write_text(document, "utf-8")
    else:
        sys.stdout.write(document)
    cost = diagram.cost()
    print(
        f"built {config.structure.value} diagram: {cost.nonterminals} "
        f"decision nodes, {cost.levels} levels, {cost.terminals} terminals",
        file=sys.stderr,
    )
    return 0


def _cmd_analyze(parser: _Parser, args) -> int:
    table, name = _load_input(parser, args)
    profile = entropy.conditional_entropy_profile(table)
    ranking = entropy.rank_variables(table)
    names = [v.name for v in table.schema.variables]
    report = {
        "catalog": name,
        "k": table.k,
        "outputs": table.schema.output_arity,
        "entropy": entropy.entropy(table),
        "conditional": [
            {"index": i, "variable": names[i], "entropy": profile[i]}
            for i in range(table.schema.n)
        ],
        "ranking": [{"index": i, "variable": names[i]} for i in ranking],
    }
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_bench(parser: _Parser, args) -> int:
    directory = Path(args.datasets)
    datasets.ensure_datasets(directory)
    consistency = Consistency(args.consistency)
    sources = [
        (name, (lambda n=name: datasets.load_dataset(n, directory, consistency)))
        for name in datasets.BENCH_DATASETS
    ]
    rows = bench.run_benchmark(
        sources, iterations=args.iters, criterion=Criterion.parse(args.criterion)
    )
    sys.stdout.write(bench.format_table(rows))
    if args.report:
        Path(args.report).write_text(bench.to_csv(rows), "utf-8")
        print(f"wrote {args.report}", file=sys.stderr)
    failures = [r for r in rows if r.error]
    if failures:
        print(f"{len(failures)} dataset(s) failed to build", file=sys.stderr)
    return 0


def _cmd_fetch(parser: _Parser, args) -> int:
    written = datasets.fetch_monks(Path(args.datasets), base_url=args.base_url)
    for path in written:
        print(path)
    return 0


def _cmd_paths(parser: _Parser, args) -> int:
    diagram = Diagram.from_json(Path(args.diagram).read_text("utf-8"))
    for descriptor in diagram.paths():
        sys.stdout.write(
            json.dumps(descriptor.to_doc(), sort_keys=True, separators=(",", ":"))
            + "\n"
        )
    return 0


def _load_diagram_for_serving(parser: _Parser, args) -> tuple[Diagram, str]:
    diagram = Diagram.from_json(Path(args.diagram).read_text("utf-8"))
    name = "catalog"
    if args.catalog:
        catalog = load_catalog(Path(args.catalog).read_text("utf-8"))
        if catalog.schema != diagram.schema:
            raise DataError(
                "catalog schema does not match the diagram's schema"
            )
        name = catalog.name
    return diagram, name


def _cmd_serve(parser: _Parser, args) -> int:
    diagram, name = _load_diagram_for_serving(parser, args)
    ui_dir = Path(args.ui) if args.ui else None
    if ui_dir is None:
        default_ui = Path("frontend") / "dist"
        if default_ui.is_dir():
            ui_dir = default_ui
    if ui_dir is not None and not ui_dir.is_dir():
        raise DataError(f"UI directory not found: {ui_dir}")
    server = make_server(
        diagram,
        host=args.host,
        port=args.port,
        catalog_name=name,
        ui_dir=ui_dir,
        verbose=args.verbose,
    )
    where = f"http://{server.server_address[0]}:{server.port}/"
    ui_note = f", serving UI from {ui_dir}" if ui_dir else ""
    print(f"listening on {where}{ui_note}", file=sys.stderr)
    serve_forever(server)
    return 0


def _cmd_navigate(parser: _Parser, args) -> int:
    diagram, name = _load_diagram_for_serving(parser, args)
    session = Session("terminal", diagram)
    print(f"navigating {name}; numbers answer, 'u' undoes, 'q' quits")
    while True:
        state = session.state()
        if state["status"] == "question":
            question = state["question"]
            number = len(state["trail"]) + 1
            print(f"question {number}: {question['variable']}")
            for i, option in enumerate(question["options"]):
                print(f"  [{i}] {option}")
        elif state["status"] == "resolved":
            result = state["result"]
            print(f"resolved: {result['label']} (product {result['product_id']})")
        else:
            print("no match: no product satisfies the chosen answers")
        try:
            line = input("> ").strip().lower()
        except EOFError:
            print()
            return 0
        if line in ("q", "quit", "exit"):
            return 0
        if line in ("u", "undo"):
            if session.trail:
                session.undo()
            else:
                print("nothing to undo")
            continue
        if line in ("r", "restart"):
            session = Session("terminal", diagram)
            continue
        if state["status"] != "question":
            print("dialogue finished; 'u' to undo, 'r' to restart, 'q' to quit")
            continue
        try:
            value = int(line)
        except ValueError:
            print("enter an option number, 'u' to undo, or 'q' to quit")
            continue
        try:
            session.answer(value)
        except InfoddError as exc:
            print(f"invalid answer: {exc}")


def _cmd_perf(parser: _Parser, args) -> int:
    directory = Path(args.datasets)
    datasets.ensure_datasets(directory)
    named = [
        (name, datasets.load_dataset(name, directory))
        for name in datasets.BENCH_DATASETS
    ]
    records = bench.kernel_benchmark(named, repeats=args.repeats)
    backends = sorted(kernels.available_backends())
    print(f"active kernel backend: {kernels.BACKEND}")
    header = f"{'dataset':<12}{'k':>6}" + "".join(
        f"{b + ' (ms)':>14}" for b in backends
    ) + f"{'speedup':>10}"
    print(header)
    for record in records:
        cells = "".join(
            f"{record['timings'][b] * 1000:>14.3f}" for b in backends
        )
        speedup = record.get("speedup")
        tail = f"{speedup:>9.1f}x" if speedup is not None else f"{'-':>10}"
        print(f"{record['dataset']:<12}{record['k']:>6}" + cells + tail)
    if "c" not in backends:
        print("compiled kernel not installed; showing pure backend only")
    return 0


# -- parser assembly -----------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(
        prog="infodd",
        description=(
            "Convert decision tables into entropy-optimized decision "
            "trees and diagrams, benchmark them, and serve guided "
            "product selection."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="induce a diagram and emit JSON")
    _add_input_flags(p_build)
    p_build.add_argument("--algo", choices=["greedy", "iter"], default="greedy")
    p_build.add_argument(
        "--iters", type=int, default=None,
        help="iteration count for --algo iter (default 10)",
    )
    p_build.add_argument("--structure", default="dd", help="tree or dd")
    p_build.add_argument(
        "--criterion", default="levels,nodes",
        help="cost order: levels,nodes or nodes,levels",
    )
    p_build.add_argument(
        "--pad-arity", type=int, default=0, metavar="R",
        help="pad every variable and the output domain to at least R values",
    )
    p_build.add_argument("--out", metavar="FILE", help="write the diagram here")
    p_build.set_defaults(func=_cmd_build)

    p_analyze = sub.add_parser(
        "analyze", help="entropy profile and variable ranking"
    )
    _add_input_flags(p_analyze)
    p_analyze.set_defaults(func=_cmd_analyze)

    p_bench = sub.add_parser("bench", help="run the benchmark grid")
    p_bench.add_argument(
        "--datasets", default="datasets", metavar="DIR",
        help="dataset directory (missing files are generated)",
    )
    p_bench.add_argument("--iters", type=int, default=10)
    p_bench.add_argument(
        "--criterion", default="nodes,levels",
        help="cost order for iterated builds (default nodes,levels)",
    )
    p_bench.add_argument(
        "--consistency", choices=["strict", "majority"], default="strict"
    )
    p_bench.add_argument("--report", metavar="FILE", help="also write CSV here")
    p_bench.set_defaults(func=_cmd_bench)

    p_fetch = sub.add_parser(
        "fetch", help="download the original Monk's files"
    )
    p_fetch.add_argument("--datasets", default="datasets", metavar="DIR")
    p_fetch.add_argument(
        "--base-url", default=datasets.MONKS_BASE_URL,
        help="mirror to download from",
    )
    p_fetch.set_defaults(func=_cmd_fetch)

    p_paths = sub.add_parser("paths", help="list diagram paths as JSON lines")
    p_paths.add_argument("--diagram", required=True, metavar="FILE")
    p_paths.set_defaults(func=_cmd_paths)

    p_serve = sub.add_parser("serve", help="run the HTTP navigator service")
    p_serve.add_argument("--diagram", required=True, metavar="FILE")
    p_serve.add_argument("--catalog", metavar="FILE")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--ui", metavar="DIR", help="static UI directory")
    p_serve.add_argument("--verbose", action="store_true")
    p_serve.set_defaults(func=_cmd_serve)

    p_nav = sub.add_parser("navigate", help="interactive terminal session")
    p_nav.add_argument("--diagram", required=True, metavar="FILE")
    p_nav.add_argument("--catalog", metavar="FILE")
    p_nav.set_defaults(func=_cmd_navigate)

    p_perf = sub.add_parser("perf", help="compare entropy kernel backends")
    p_perf.add_argument("--datasets", default="datasets", metavar="DIR")
    p_perf.add_argument("--repeats", type=int, default=5)
    p_perf.set_defaults(func=_cmd_perf)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except InfoddError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
