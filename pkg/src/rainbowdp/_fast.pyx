# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot numeric loops.

Kept in lockstep with _fast_py; the test suite runs both backends against
each other on randomized instances.
"""

import numpy as np


def relax_rank(long[::1] indptr, long[::1] indices, unsigned char[::1] fixed,
               double[::1] values, double[::1] residual,
               double e_eps, double tol, long max_sweeps):
    """See _fast_py.relax_rank; identical contract."""
    cdef Py_ssize_t n = values.shape[0]
    cdef double inv = 1.0 / e_eps
    cdef long changed = 0
    cdef long sweep
    cdef Py_ssize_t u, p
    cdef long w
    cdef double v, nv, cand, delta

    for sweep in range(max_sweeps):
        delta = 0.0
        for u in range(n):
            if fixed[u]:
                continue
            v = values[u]
            nv = residual[u] if residual[u] < v else v
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                cand = e_eps * values[w]
                if cand < nv:
                    nv = cand
                cand = residual[u] - inv * (residual[w] - values[w])
                if cand < nv:
                    nv = cand
            if v - nv > delta:
                delta = v - nv
            values[u] = nv
        if delta <= tol:
            return changed, True
        changed += 1
    return changed, False


def dp_scan(long[::1] edge_u, long[::1] edge_v, double[:, ::1] probs,
            double e_eps, double tol):
    """See _fast_py.dp_scan; identical contract."""
    cdef Py_ssize_t m = edge_u.shape[0]
    cdef Py_ssize_t k = probs.shape[1]
    cdef Py_ssize_t i, j
    cdef long u, v
    cdef double a, b
    cdef Py_ssize_t count = 0

    out_arr = np.empty(m * k, dtype=np.int64)
    cdef long[::1] out = out_arr
    for i in range(m):
        u = edge_u[i]
        v = edge_v[i]
        for j in range(k):
            a = probs[u, j]
            b = probs[v, j]
            if a > e_eps * b + tol or b > e_eps * a + tol:
                out[count] = i * k + j
                count += 1
    return out_arr[:count].copy()
