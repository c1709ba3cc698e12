"""Diagram induction from decision tables by conditional entropy.

The greedy builder grows a free diagram top-down: at every node it
branches on the not-yet-tested variable with minimal H(f|x) over the
rows that reach the node (ties to the lowest variable index), and
recurses into one cofactor per value. Constant sub-tables become
terminals, empty ones the x-terminal.

The iterated builder runs the greedy construction several times,
steering only the root choice: build t takes the rank-t variable of
the root's entropy ranking (clamped to the candidate count) and stays
greedy below. The best build under the configured cost criterion
wins; comparisons are strict, so the earliest build keeps ties and
one iteration reproduces the greedy result exactly.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from enum import Enum

from . import kernels
from .diagram import CostMetrics, Diagram, Kind
from .errors import InconsistentTableError
from .table import Consistency, DecisionTable

__all__ = [
    "Algorithm",
    "Criterion",
    "TieBreak",
    "InductionConfig",
    "build",
    "info_greedy",
    "info_iter",
    "compare_cost",
    "parse_structure",
]


class Algorithm(Enum):
    GREEDY = "greedy"
    ITER = "iter"


class TieBreak(Enum):
    LOWEST_INDEX = "lowest_index"


class Criterion(Enum):
    """Cost order for picking the best iterated build."""

    LEVELS_THEN_NODES = ("levels", "nonterminals")
    NODES_THEN_LEVELS = ("nonterminals", "levels")

    @classmethod
    def parse(cls, text: str) -> "Criterion":
        known = {
            "levels,nodes": cls.LEVELS_THEN_NODES,
            "nodes,levels": cls.NODES_THEN_LEVELS,
        }
        try:
            return known[text.strip().lower()]
        except KeyError:
            raise ValueError(
                f"unknown criterion {text!r} (expected 'levels,nodes' "
                f"or 'nodes,levels')"
            ) from None


def parse_structure(text: str) -> Kind:
    known = {"tree": Kind.TREE, "dd": Kind.REDUCED, "reduced": Kind.REDUCED}
    try:
        return known[text.strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown structure {text!r} (expected 'tree' or 'dd')"
        ) from None


@dataclass(frozen=True)
class InductionConfig:
    algorithm: Algorithm = Algorithm.GREEDY
    iterations: int = 1
    structure: Kind = Kind.REDUCED
    criterion: Criterion = Criterion.LEVELS_THEN_NODES
    tie_break: TieBreak = TieBreak.LOWEST_INDEX
    inconsistency: Consistency = Consistency.STRICT

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.algorithm is Algorithm.GREEDY and self.iterations != 1:
            raise ValueError("the greedy algorithm runs exactly one iteration")

    @classmethod
    def from_doc(cls, doc: dict) -> "InductionConfig":
        kwargs = {}
        if "algorithm" in doc:
            kwargs["algorithm"] = Algorithm(str(doc["algorithm"]).lower())
        if "iterations" in doc:
            kwargs["iterations"] = int(doc["iterations"])
        if "structure" in doc:
            kwargs["structure"] = parse_structure(doc["structure"])
        if "criterion" in doc:
            kwargs["criterion"] = Criterion.parse(doc["criterion"])
        if "tie_break" in doc:
            kwargs["tie_break"] = TieBreak(str(doc["tie_break"]).lower())
        if "inconsistency" in doc:
            kwargs["inconsistency"] = Consistency(str(doc["inconsistency"]).lower())
        return cls(**kwargs)


def compare_cost(a: CostMetrics, b: CostMetrics, criterion: Criterion) -> int:
    """-1, 0 or 1 as ``a`` is cheaper than, equal to, or dearer than ``b``."""
    ka, kb = a.key(criterion.value), b.key(criterion.value)
    return (ka > kb) - (ka < kb)


def _induce(
    table: DecisionTable,
    structure: Kind,
    inconsistency: Consistency,
    root_rank: int,
) -> Diagram:
    """One full recursive build; root_rank steers only the root choice."""
    schema = table.schema
    flat, outputs = table.packed()
    n = schema.n
    m = schema.output_arity
    arities = array("i", schema.arities)
    out = Diagram(schema, structure)

    def majority_leaf(rows: array) -> int:
        if inconsistency is Consistency.STRICT:
            raise InconsistentTableError(
                "sub-table is not constant but no variable can split it"
            )
        counts = [0] * m
        for i in rows:
            counts[outputs[i]] += 1
        best = min(range(m), key=lambda o: (-counts[o], o))
        return out.terminal(best)

    def rec(rows: array, used: int, rank: int) -> int:
        if len(rows) == 0:
            return out.xterminal()
        const = kernels.constant_output(outputs, rows)
        if const >= 0:
            return out.terminal(const)
        cands = array(
            "i", (x for x in range(n) if not (used >> x) & 1)
        )
        if len(cands) == 0:
            return majority_leaf(rows)
        entropies, multi = kernels.conditional_entropies(
            flat, n, outputs, rows, cands, arities, m
        )
        usable = [
            (entropies[j], cands[j]) for j in range(len(cands)) if multi[j]
        ]
        if not usable:
            return majority_leaf(rows)
        usable.sort()
        var = usable[min(rank, len(usable) - 1)][1]
        buckets = [array("i") for _ in range(arities[var])]
        for i in rows:
            buckets[flat[i * n + var]].append(i)
        mask = used | (1 << var)
        children = [rec(bucket, mask, 0) for bucket in buckets]
        return out.internal(var, children)

    return out.seal(rec(table.row_index(), 0, root_rank))


def _root_candidate_count(table: DecisionTable) -> int:
    """Number of variables with at least two values in the full table."""
    flat, outputs = table.packed()
    schema = table.schema
    _, multi = kernels.conditional_entropies(
        flat, schema.n, outputs, table.row_index(),
        array("i", range(schema.n)), array("i", schema.arities),
        schema.output_arity,
    )
    return sum(multi)


def info_greedy(
    table: DecisionTable, config: InductionConfig | None = None
) -> Diagram:
    """Single greedy build (always rank 0)."""
    if config is None:
        config = InductionConfig()
    if config.algorithm is not Algorithm.GREEDY:
        raise ValueError("info_greedy requires a GREEDY config")
    return _induce(table, config.structure, config.inconsistency, 0)


def info_iter(table: DecisionTable, config: InductionConfig) -> Diagram:
    """Best of ``config.iterations`` root-steered builds.

    Build t uses the rank-t root variable; ranks past the end of the
    candidate list repeat the last candidate, so surplus iterations
    are skipped rather than rebuilt.
    """
    if config.algorithm is not Algorithm.ITER:
        raise ValueError("info_iter requires an ITER config")
    effective = max(1, min(config.iterations, _root_candidate_count(table)))
    best: Diagram | None = None
    best_cost: CostMetrics | None = None
    for rank in range(effective):
        built = _induce(table, config.structure, config.inconsistency, rank)
        cost = built.cost()
        if best is None or compare_cost(cost, best_cost, config.criterion) < 0:
            best, best_cost = built, cost
    return best


def build(table: DecisionTable, config: InductionConfig) -> Diagram:
    """Dispatch on the configured algorithm."""
    if config.algorithm is Algorithm.GREEDY:
        return info_greedy(table, config)
    return info_iter(table, config)
