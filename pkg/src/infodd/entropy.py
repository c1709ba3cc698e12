"""Entropy measures over decision tables.

Probabilities are empirical row frequencies, so duplicate rows carry
weight. All logs are base 2 and the 0*log(0) terms are dropped, per
the usual convention.
"""

from __future__ import annotations

from array import array

from . import kernels
from .table import DecisionTable

__all__ = [
    "entropy",
    "conditional_entropy",
    "conditional_entropy_profile",
    "rank_variables",
]


def entropy(table: DecisionTable) -> float:
    """H(f): Shannon entropy of the table's output distribution, in bits."""
    _, outputs = table.packed()
    return kernels.subset_entropy(outputs, table.row_index(), table.schema.output_arity)


def conditional_entropy_profile(table: DecisionTable) -> list[float]:
    """H(f|x) for every variable of the schema, in variable order.

    H(f|x) is the expectation, over the values of x weighted by their
    row frequency, of the entropy of the matching cofactor.
    """
    flat, outputs = table.packed()
    schema = table.schema
    cands = array("i", range(schema.n))
    arities = array("i", schema.arities)
    entropies, _ = kernels.conditional_entropies(
        flat, schema.n, outputs, table.row_index(), cands, arities,
        schema.output_arity,
    )
    return entropies


def conditional_entropy(table: DecisionTable, var: int) -> float:
    """H(f|x) for a single variable index."""
    if not 0 <= var < table.schema.n:
        raise IndexError(f"variable index {var} out of range")
    flat, outputs = table.packed()
    schema = table.schema
    entropies, _ = kernels.conditional_entropies(
        flat, schema.n, outputs, table.row_index(), array("i", (var,)),
        array("i", schema.arities), schema.output_arity,
    )
    return entropies[0]


def rank_variables(table: DecisionTable) -> list[int]:
    """Variable indices sorted by ascending H(f|x), ties to the lowest index.

    The front of the ranking is the most informative question to ask
    first; the ranking drives both the greedy choice (rank 0) and the
    alternative roots tried by the iterated builder.
    """
    profile = conditional_entropy_profile(table)
    return sorted(range(table.schema.n), key=lambda x: (profile[x], x))
