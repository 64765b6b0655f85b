"""Independent numerical solver via sequential per-rank maximization.

Within each region, ranks are maximized one at a time in preference order:
with earlier ranks frozen, every neighbor w imposes two upper bounds on the
current-rank value at u, both non-decreasing in the neighbor's value, so all
interior values can be maximized simultaneously. That makes the maximum the
greatest fixed point of a monotone bound system, computed here by downward
relaxation sweeps: initialize interior values at their residual budget and
repeatedly apply the neighbor bounds until nothing moves. Bounds propagate at
least one hop per sweep, so at most |region| sweeps are needed.

This route shares nothing with the closed-form line solver and serves as its
ground truth; it also handles palettes of any size, for which no closed form
is provided.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError
from .mechanism import BoundarySpec, verify_dp
from .model import (
    Epsilon,
    Mechanism,
    ProbVector,
    RainbowGraph,
    from_rank_view,
    rank_view,
)
from .topology import Region, decompose, distance_to_boundary

#: Convergence tolerance for the relaxation sweeps.
RELAX_TOL = 1e-12

#: A converged value this far below zero means the fixed boundary values admit
#: no extension; smaller excursions are rounding.
INFEASIBLE_TOL = -1e-9

SWEEP_ORDERS = ("distance", "reverse")


@dataclass
class RankState:
    """Working state for maximizing one rank within one region.

    order fixes the sweep order of the region's vertices; residual holds
    1 minus the frozen earlier-rank values; values holds the current rank's
    entries, pinned wherever fixed is True (the region's boundary vertices).
    """

    rank: int
    order: tuple[str, ...]
    residual: np.ndarray
    values: np.ndarray
    fixed: np.ndarray


def _region_order(
    g: RainbowGraph, region: Region, sweep_order: str = "distance"
) -> tuple[str, ...]:
    if sweep_order not in SWEEP_ORDERS:
        raise ValueError(f"sweep_order must be one of {SWEEP_ORDERS}")
    dist = distance_to_boundary(g, region)
    ordered = sorted(region.members, key=lambda v: (dist[v], v))
    if sweep_order == "reverse":
        ordered.reverse()
    return tuple(ordered)


def _region_csr(g: RainbowGraph, order: tuple[str, ...]):
    """Adjacency of the region-induced subgraph in local indices."""
    local = {v: i for i, v in enumerate(order)}
    indptr = np.zeros(len(order) + 1, dtype=np.int64)
    cols: list[int] = []
    for i, v in enumerate(order):
        for w in g.neighbors(v):
            j = local.get(w)
            if j is not None:
                cols.append(j)
        indptr[i + 1] = len(cols)
    return indptr, np.asarray(cols, dtype=np.int64)


def _relax(indptr, indices, fixed, values, residual, eps: Epsilon) -> int:
    """Run the kernel to the fixed point; returns the number of changing sweeps."""
    from . import kernels

    max_sweeps = len(values) + 1
    changed, converged = kernels.relax_rank(
        indptr, indices, fixed, values, residual, eps.factor, RELAX_TOL, max_sweeps
    )
    if not converged:
        raise RuntimeError("relaxation failed to converge within the sweep budget")
    return changed


def solve_region_rank(
    state: RankState, region: Region, g: RainbowGraph, eps: Epsilon
) -> np.ndarray:
    """Simultaneous per-vertex maxima for one rank, earlier ranks frozen.

    Returns a new array aligned with state.order; state is not modified.
    Raises InfeasibleError if the converged values dip below zero beyond
    rounding, meaning the pinned values admit no extension.
    """
    if set(state.order) != set(region.members):
        raise ValueError("state order does not cover the region")
    indptr, indices = _region_csr(g, state.order)
    values = np.array(state.values, dtype=np.float64)
    _relax(indptr, indices, np.asarray(state.fixed, dtype=np.uint8), values,
           np.asarray(state.residual, dtype=np.float64), eps)
    if float(values.min(initial=0.0)) < INFEASIBLE_TOL:
        raise InfeasibleError(
            f"rank {state.rank} admits no non-negative extension in region "
            f"{region.rainbow.order}"
        )
    return np.maximum(values, 0.0)


def _solve_region(
    g: RainbowGraph,
    region: Region,
    spec: BoundarySpec,
    eps: Epsilon,
    sweep_order: str,
) -> dict[str, ProbVector]:
    k = g.palette.size
    order = _region_order(g, region, sweep_order)
    m = len(order)
    indptr, indices = _region_csr(g, order)
    fixed = np.array([v in region.boundary for v in order], dtype=np.uint8)

    pinned = None
    if region.boundary:
        vec = spec.get(region.rainbow)
        if vec is None:
            raise ValueError(
                f"no boundary distribution for rainbow {region.rainbow.order}"
            )
        pinned = rank_view(vec, region.rainbow)

    residual = np.ones(m, dtype=np.float64)
    ranks = np.empty((k, m), dtype=np.float64)
    for rank in range(k - 1):
        values = residual.copy()
        if pinned is not None:
            values[fixed == 1] = pinned[rank]
        _relax(indptr, indices, fixed, values, residual, eps)
        if float(values.min(initial=0.0)) < INFEASIBLE_TOL:
            raise InfeasibleError(
                f"rank {rank} admits no non-negative extension in region "
                f"{region.rainbow.order}"
            )
        np.maximum(values, 0.0, out=values)
        ranks[rank] = values
        residual = residual - values

    if float(residual.min(initial=0.0)) < INFEASIBLE_TOL:
        raise InfeasibleError("final rank residual is negative")
    ranks[k - 1] = np.maximum(residual, 0.0)

    return {
        v: from_rank_view(tuple(ranks[:, j]), region.rainbow)
        for j, v in enumerate(order)
    }


def solve_lexicographic(
    g: RainbowGraph,
    spec: BoundarySpec,
    eps: Epsilon,
    sweep_order: str = "distance",
) -> Mechanism:
    """Rank-by-rank maximization over every region, then a full-graph check.

    The result is independent of sweep_order up to rounding; exposing the
    order exists so that independence can be asserted. Raises InfeasibleError
    when a region admits no extension or the assembled mechanism fails the
    privacy check on cross-region edges.
    """
    dist: dict[str, ProbVector] = {}
    for region in decompose(g):
        dist.update(_solve_region(g, region, spec, eps, sweep_order))
    mech = Mechanism(g.palette, {v: dist[v] for v in g.vertices})

    report = verify_dp(mech, g, eps)
    if not report.ok:
        raise InfeasibleError(
            "boundary distributions violate the privacy bound across regions",
            violations=report.violations,
        )
    return mech


def random_feasible(
    g: RainbowGraph,
    spec: BoundarySpec,
    eps: Epsilon,
    seed: int,
    shrink: float | None = None,
    base: Mechanism | None = None,
) -> Mechanism:
    """A feasible comparison mechanism with the same boundary values.

    Interpolates the maximal solution toward the constant extension of the
    boundary distribution, one coefficient per region; the constraint set is
    convex and both endpoints are feasible with identical boundary values, so
    every mixture is too. shrink=0 reproduces the maximal solution; None draws
    a coefficient per region from the seeded generator. Test fodder for
    domination checks, not part of the solving pipeline.
    """
    if base is None:
        base = solve_lexicographic(g, spec, eps)
    rng = np.random.default_rng(seed)
    out: dict[str, ProbVector] = {}
    for region in decompose(g):
        t = float(rng.uniform()) if shrink is None else float(shrink)
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"shrink must lie in [0, 1], got {t}")
        ref = spec.get(region.rainbow) if region.boundary else None
        for v in sorted(region.members):
            if v in region.boundary or ref is None or t == 0.0:
                out[v] = base[v]
                continue
            mixed = tuple(
                (1.0 - t) * a + t * b for a, b in zip(base[v].p, ref.p)
            )
            out[v] = ProbVector(mixed)
    return Mechanism(g.palette, {v: out[v] for v in g.vertices})
