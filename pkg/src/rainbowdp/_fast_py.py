"""Pure-Python reference implementations of the hot numeric loops.

Same semantics as the compiled extension; selected automatically when the
extension is missing or RAINBOWDP_PURE_PYTHON is set.
"""

from __future__ import annotations

import numpy as np


def relax_rank(indptr, indices, fixed, values, residual, e_eps, tol, max_sweeps):
    """Drive `values` down to the greatest fixed point of the bound system.

    Sweeps vertices in array order (Gauss-Seidel). For each non-fixed vertex u
    the value is capped by residual[u] and, per neighbor w, by
    e_eps * values[w] and residual[u] - (residual[w] - values[w]) / e_eps.
    Mutates `values` in place. Returns (changed_sweeps, converged) where
    converged means a full sweep moved no value by more than tol.
    """
    n = len(values)
    inv = 1.0 / e_eps
    changed = 0
    for _ in range(max_sweeps):
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


def dp_scan(edge_u, edge_v, probs, e_eps, tol):
    """Flat indices (edge * k + color) where some direction of the per-color
    privacy ratio bound fails, in row-major order."""
    pu = probs[edge_u]
    pv = probs[edge_v]
    bad = (pu > e_eps * pv + tol) | (pv > e_eps * pu + tol)
    return np.flatnonzero(bad).astype(np.int64)
