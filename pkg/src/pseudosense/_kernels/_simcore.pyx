# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled selection kernels.

Single-pass top-k and argmax scans over a dense score vector with an
exclusion list.  Semantics are bit-identical to ``fallback.py``: ranking
is by descending score with ties broken by ascending row id, and the
exclusion array must be sorted, unique int64 row ids.

The scans are O(n * k) and O(n) with no allocations beyond the output,
which is what makes them worth compiling: the score vector itself comes
out of a BLAS product, but Python-level selection over 100k+ rows per
query dominates otherwise.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def topk_select(double[::1] scores, Py_ssize_t k, i64[::1] exclude):
    """Indices of the k best scores, descending, ties by ascending id."""
    cdef Py_ssize_t n = scores.shape[0]
    cdef Py_ssize_t n_excl = exclude.shape[0]
    cdef Py_ssize_t cap = k
    if cap < 0:
        cap = 0
    if cap > n:
        cap = n
    out = np.empty(cap, dtype=np.int64)
    if cap == 0:
        return out
    buf = np.empty(cap, dtype=np.float64)
    cdef i64[::1] best_ids = out
    cdef double[::1] best = buf
    cdef Py_ssize_t count = 0
    cdef Py_ssize_t e_ptr = 0
    cdef Py_ssize_t i, j
    cdef double s
    for i in range(n):
        while e_ptr < n_excl and exclude[e_ptr] < i:
            e_ptr += 1
        if e_ptr < n_excl and exclude[e_ptr] == i:
            e_ptr += 1
            continue
        s = scores[i]
        if count == cap and s <= best[cap - 1]:
            continue
        # insert from the tail; equal scores keep the earlier (smaller) id
        j = count if count < cap else cap - 1
        while j > 0 and best[j - 1] < s:
            best[j] = best[j - 1]
            best_ids[j] = best_ids[j - 1]
            j -= 1
        best[j] = s
        best_ids[j] = i
        if count < cap:
            count += 1
    if count < cap:
        return out[:count].copy()
    return out


def argmax_select(double[::1] scores, i64[::1] exclude):
    """Id of the best score outside the exclusion list, -1 if none."""
    cdef Py_ssize_t n = scores.shape[0]
    cdef Py_ssize_t n_excl = exclude.shape[0]
    cdef Py_ssize_t e_ptr = 0
    cdef Py_ssize_t i
    cdef Py_ssize_t best_id = -1
    cdef double best = 0.0
    for i in range(n):
        while e_ptr < n_excl and exclude[e_ptr] < i:
            e_ptr += 1
        if e_ptr < n_excl and exclude[e_ptr] == i:
            e_ptr += 1
            continue
        if best_id < 0 or scores[i] > best:
            best = scores[i]
            best_id = i
    return best_id
