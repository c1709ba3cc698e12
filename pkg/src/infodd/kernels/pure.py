"""Pure-Python entropy kernels.

Reference implementation for the compiled extension: every loop and
every floating-point expression here is mirrored statement for
statement in the Cython source so both backends produce bit-identical
results. Keep the summation order (values ascending, outputs
ascending) unchanged.

All functions take packed buffers: ``values`` is the row-major flat
value matrix of the full table, ``outputs`` the per-row outputs, and
``rows`` an index array selecting the subset under consideration.
"""

from __future__ import annotations

from math import log2

__all__ = ["subset_entropy", "conditional_entropies", "constant_output"]


def subset_entropy(outputs, rows, m):
    """Shannon entropy (bits) of the output distribution over ``rows``."""
    counts = [0] * m
    total = 0
    for i in rows:
        counts[outputs[i]] += 1
        total += 1
    if total == 0:
        return 0.0
    ent = 0.0
    for c in counts:
        if c:
            p = c / total
            ent -= p * log2(p)
    return ent


def conditional_entropies(values, n, outputs, rows, cands, arities, m):
    """H(f|x) for each candidate variable, over the given row subset.

    Returns ``(entropies, multi)`` aligned with ``cands``; ``multi[j]``
    is 1 when candidate j takes at least two distinct values on the
    subset (a variable worth branching on) and 0 otherwise.
    """
    k = len(rows)
    entropies = []
    multi = []
    for x in cands:
        arity = arities[x]
        counts = [0] * (arity * m)
        kv = [0] * arity
        for i in rows:
            v = values[i * n + x]
            counts[v * m + outputs[i]] += 1
            kv[v] += 1
        ent = 0.0
        seen = 0
        for v in range(arity):
            kvv = kv[v]
            if not kvv:
                continue
            seen += 1
            hv = 0.0
            base = v * m
            for out in range(m):
                c = counts[base + out]
                if c:
                    p = c / kvv
                    hv -= p * log2(p)
            ent += (kvv / k) * hv
        entropies.append(ent)
        multi.append(1 if seen >= 2 else 0)
    return entropies, multi


def constant_output(outputs, rows):
    """Shared output over ``rows``: the value, -1 if mixed, -2 if empty."""
    it = iter(rows)
    try:
        first = outputs[next(it)]
    except StopIteration:
        return -2
    for i in it:
        if outputs[i] != first:
            return -1
    return first
