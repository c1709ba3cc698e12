# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled entropy kernels.

Statement-for-statement mirror of ``infodd.kernels.pure``; the two
must stay bit-identical. That requires the same summation order
(values ascending, outputs ascending), libm log2 on both sides, and
a build without floating-point contraction (-ffp-contract=off).
"""

from libc.math cimport log2
from libc.stdlib cimport calloc, free
from libc.string cimport memset


def subset_entropy(int[:] outputs, int[:] rows, int m):
    """Shannon entropy (bits) of the output distribution over ``rows``."""
    cdef Py_ssize_t total = rows.shape[0]
    cdef Py_ssize_t j
    cdef int c
    cdef double ent, p
    if total == 0:
        return 0.0
    cdef int* counts = <int*>calloc(m, sizeof(int))
    if counts == NULL:
        raise MemoryError()
    try:
        for j in range(total):
            counts[outputs[rows[j]]] += 1
        ent = 0.0
        for j in range(m):
            c = counts[j]
            if c:
                p = (<double>c) / (<double>total)
                ent -= p * log2(p)
        return ent
    finally:
        free(counts)


def conditional_entropies(int[:] values, int n, int[:] outputs, int[:] rows,
                          int[:] cands, int[:] arities, int m):
    """H(f|x) for each candidate variable, over the given row subset.

    Returns ``(entropies, multi)`` aligned with ``cands``; ``multi[j]``
    is 1 when candidate j takes at least two distinct values on the
    subset and 0 otherwise.
    """
    cdef Py_ssize_t k = rows.shape[0]
    cdef Py_ssize_t ncands = cands.shape[0]
    cdef Py_ssize_t j, i
    cdef int x, arity, v, out, c, kvv, seen, max_arity
    cdef double ent, hv, p

    max_arity = 1
    for j in range(ncands):
        arity = arities[cands[j]]
        if arity > max_arity:
            max_arity = arity

    cdef int* counts = <int*>calloc(max_arity * m, sizeof(int))
    cdef int* kv = <int*>calloc(max_arity, sizeof(int))
    if counts == NULL or kv == NULL:
        free(counts)
        free(kv)
        raise MemoryError()

    entropies = []
    multi = []
    try:
        for j in range(ncands):
            x = cands[j]
            arity = arities[x]
            memset(counts, 0, arity * m * sizeof(int))
            memset(kv, 0, arity * sizeof(int))
            for i in range(k):
                v = values[rows[i] * n + x]
                counts[v * m + outputs[rows[i]]] += 1
                kv[v] += 1
            ent = 0.0
            seen = 0
            for v in range(arity):
                kvv = kv[v]
                if not kvv:
                    continue
                seen += 1
                hv = 0.0
                for out in range(m):
                    c = counts[v * m + out]
                    if c:
                        p = (<double>c) / (<double>kvv)
                        hv -= p * log2(p)
                ent += ((<double>kvv) / (<double>k)) * hv
            entropies.append(ent)
            multi.append(1 if seen >= 2 else 0)
        return entropies, multi
    finally:
        free(counts)
        free(kv)


def constant_output(int[:] outputs, int[:] rows):
    """Shared output over ``rows``: the value, -1 if mixed, -2 if empty."""
    cdef Py_ssize_t k = rows.shape[0]
    cdef Py_ssize_t j
    cdef int first
    if k == 0:
        return -2
    first = outputs[rows[0]]
    for j in range(1, k):
        if outputs[rows[j]] != first:
            return -1
    return first
