"""Mechanism-level predicates and transforms.

Privacy verification, boundary homogeneity, pullback along vertex maps,
lexicographic domination, the per-graph solver, and seeded sampling.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from . import kernels
from .errors import (
    DomainMismatchError,
    InfeasibleBoundaryError,
    InfeasibleError,
    NotAMorphismError,
    UnknownVertexError,
)
from .line import LineBoundary, line_values
from .model import (
    COMPARE_TOL,
    Epsilon,
    Mechanism,
    Ordering,
    ProbVector,
    Rainbow,
    RainbowGraph,
    UNBOUNDED,
    from_rank_view,
    lex_compare,
    rank_view,
)
from .topology import BoundaryLabel, boundary_morphism, decompose

#: Slack allowed on either side of a privacy ratio inequality.
DP_TOL = 1e-9


class BoundarySpec:
    """Fixed homogeneous distribution for the boundary of each rainbow's region."""

    __slots__ = ("_table",)

    def __init__(self, table: Mapping[Rainbow, ProbVector]):
        self._table = dict(table)

    def __getitem__(self, rainbow: Rainbow) -> ProbVector:
        return self._table[rainbow]

    def get(self, rainbow: Rainbow) -> ProbVector | None:
        return self._table.get(rainbow)

    def __contains__(self, rainbow: Rainbow) -> bool:
        return rainbow in self._table

    def __iter__(self) -> Iterator[Rainbow]:
        return iter(sorted(self._table, key=lambda c: c.order))

    def __len__(self) -> int:
        return len(self._table)

    def items(self):
        return ((c, self._table[c]) for c in self)


@dataclass(frozen=True)
class DpViolation:
    """One direction of one per-color ratio bound that failed on one edge."""

    d_from: str
    d_to: str
    color: str
    ratio: float
    bound: float

    def __str__(self) -> str:
        return (
            f"Pr[{self.color}] jumps by {self.ratio:g} from {self.d_to!r} to "
            f"{self.d_from!r}, above the bound {self.bound:g}"
        )


@dataclass(frozen=True)
class DpReport:
    ok: bool
    violations: tuple[DpViolation, ...]

    def __post_init__(self):
        assert self.ok == (not self.violations)


def _check_domain(m: Mechanism, g: RainbowGraph):
    if m.palette != g.palette:
        raise DomainMismatchError("mechanism and graph use different palettes")
    if set(m.vertices) != set(g.vertices):
        missing = sorted(set(g.vertices) - set(m.vertices))[:3]
        extra = sorted(set(m.vertices) - set(g.vertices))[:3]
        raise DomainMismatchError(
            f"vertex sets differ (missing {missing}, extra {extra})"
        )


def _prob_matrix(m: Mechanism, order: tuple[str, ...]) -> np.ndarray:
    return np.array([m[v].p for v in order], dtype=np.float64)


def verify_dp(m: Mechanism, g: RainbowGraph, eps: Epsilon, tol: float = DP_TOL) -> DpReport:
    """Check every edge and every color in both directions against e**eps.

    All failures are reported, not just the first.
    """
    _check_domain(m, g)
    if not g.edges:
        return DpReport(True, ())
    probs = _prob_matrix(m, g.vertices)
    edge_u = np.array([g.index(u) for u, _ in g.edges], dtype=np.int64)
    edge_v = np.array([g.index(v) for _, v in g.edges], dtype=np.int64)
    flat = kernels.dp_scan(edge_u, edge_v, probs, eps.factor, tol)

    k = g.palette.size
    violations: list[DpViolation] = []
    for f in flat:
        e, c = divmod(int(f), k)
        u, v = g.edges[e]
        color = g.palette.colors[c]
        pu, pv = m[u].p[c], m[v].p[c]
        for hi, lo, d_hi, d_lo in ((pu, pv, u, v), (pv, pu, v, u)):
            if hi > eps.factor * lo + tol:
                ratio = hi / lo if lo > 0.0 else UNBOUNDED
                violations.append(DpViolation(d_hi, d_lo, color, ratio, eps.factor))
    return DpReport(not violations, tuple(violations))


def verify_boundary_homogeneous(
    m: Mechanism, g: RainbowGraph, tol: float = DP_TOL
) -> bool:
    """True iff within every region all boundary vertices share one distribution."""
    _check_domain(m, g)
    for region in decompose(g):
        boundary = sorted(region.boundary)
        if len(boundary) < 2:
            continue
        first = m[boundary[0]].p
        for v in boundary[1:]:
            if any(abs(a - b) > tol for a, b in zip(first, m[v].p)):
                return False
    return True


def pullback(
    m2: Mechanism,
    morphism: Mapping[str, str],
    g1: RainbowGraph,
    g2: RainbowGraph,
) -> Mechanism:
    """Transport a mechanism on g2 back to g1 along a vertex map g1 -> g2.

    The map must send adjacent vertices to equal or adjacent images; privacy
    then carries over, since every constraint on g1 is the image of one on g2
    or trivial.
    """
    _check_domain(m2, g2)
    for v in g1.vertices:
        img = morphism.get(v)
        if img is None or img not in g2:
            raise NotAMorphismError(f"vertex {v!r} has no image in the codomain")
    for u, v in g1.edges:
        a, b = morphism[u], morphism[v]
        if a != b and not g2.has_edge(a, b):
            raise NotAMorphismError(
                f"adjacent pair ({u!r}, {v!r}) maps to non-adjacent ({a!r}, {b!r})"
            )
    return Mechanism(g1.palette, {v: m2[morphism[v]] for v in g1.vertices})


def dominates(m1: Mechanism, m2: Mechanism, g: RainbowGraph, tol: float = COMPARE_TOL) -> bool:
    """True iff at every vertex the ranked view of m1 is lexicographically >= m2's."""
    _check_domain(m1, g)
    _check_domain(m2, g)
    for v in g.vertices:
        c = g.preference[v]
        if lex_compare(rank_view(m1[v], c), rank_view(m2[v], c), tol) is Ordering.LESS:
            return False
    return True


def solve_graph(
    g: RainbowGraph,
    spec: BoundarySpec,
    eps: Epsilon,
    backend: str = "auto",
) -> Mechanism:
    """Optimal boundary-homogeneous private mechanism on an arbitrary graph.

    Builds the boundary quotient, solves one line per rainbow with the fixed
    boundary values (closed form for 2 or 3 colors, the numerical solver
    otherwise), pulls the result back, and verifies the privacy bound on the
    full graph including cross-region edges. Region pieces that have no
    boundary are unconstrained and get probability 1 on their most preferred
    color.

    Raises InfeasibleBoundaryError, listing every violating edge and color,
    when the requested boundary distributions admit no private extension.
    """
    k = g.palette.size
    if backend == "auto":
        backend = "closed" if k in (2, 3) else "oracle"
    if backend not in ("closed", "oracle"):
        raise ValueError(f"unknown backend {backend!r}")

    bgraph, labels = boundary_morphism(g, allow_unbounded=True)
    bg = bgraph.to_rainbow_graph()

    if backend == "closed":
        if k not in (2, 3):
            raise ValueError("the closed form covers 2- and 3-color palettes only")
        node_dist: dict[str, ProbVector] = {}
        for rainbow in sorted(bgraph.max_dist, key=lambda c: c.order):
            vec = spec.get(rainbow)
            if vec is None:
                raise ValueError(f"no boundary distribution for rainbow {rainbow.order}")
            rv = rank_view(vec, rainbow)
            n = bgraph.max_dist[rainbow] + 1
            if k == 3:
                sol = line_values(LineBoundary(rv[0], rv[1], rv[2], eps, n))
                vectors = [sol.prob_vector(i, rainbow) for i in range(n)]
            else:
                sol = line_values(LineBoundary(rv[0], rv[1], 0.0, eps, n))
                vectors = [
                    from_rank_view((sol.b[i], sol.r[i]), rainbow) for i in range(n)
                ]
            for i, vec_i in enumerate(vectors):
                node_dist[bgraph.vertex_id(BoundaryLabel(rainbow, i))] = vec_i
        for label in bgraph.nodes:
            if label.dist == UNBOUNDED:
                top = [0.0] * k
                top[label.rainbow.top] = 1.0
                node_dist[bgraph.vertex_id(label)] = ProbVector(tuple(top))
        bmech = Mechanism(g.palette, node_dist)
    else:
        from . import oracle

        try:
            bmech = oracle.solve_lexicographic(bg, spec, eps)
        except InfeasibleError as err:
            raise InfeasibleBoundaryError(str(err), violations=err.violations) from err

    m = pullback(bmech, {v: bgraph.vertex_id(labels[v]) for v in g.vertices}, g, bg)
    report = verify_dp(m, g, eps)
    if not report.ok:
        raise InfeasibleBoundaryError(
            "boundary distributions violate the privacy bound",
            violations=report.violations,
        )
    return m


def _vertex_rng(seed: int, vertex: str) -> np.random.Generator:
    # Counter-based generator keyed by (seed, vertex digest): draws for one
    # vertex are a pure function of the pair and independent across vertices.
    digest = hashlib.sha256(vertex.encode("utf-8")).digest()
    vkey = int.from_bytes(digest[:8], "big")
    return np.random.Generator(
        np.random.Philox(key=np.array([seed & (2**64 - 1), vkey], dtype=np.uint64))
    )


def sample(m: Mechanism, d: str, seed: int) -> str:
    """Draw one color at vertex d; deterministic for a fixed (seed, vertex)."""
    if d not in m:
        raise UnknownVertexError(d)
    rng = _vertex_rng(seed, d)
    idx = int(rng.choice(m.palette.size, p=m[d].p))
    return m.palette.colors[idx]


def sample_counts(m: Mechanism, d: str, count: int, seed: int) -> dict[str, int]:
    """Per-color tallies of `count` draws from the stream that sample() heads."""
    if d not in m:
        raise UnknownVertexError(d)
    if count < 0:
        raise ValueError("count must be non-negative")
    out = {color: 0 for color in m.palette.colors}
    if count:
        rng = _vertex_rng(seed, d)
        draws = rng.choice(m.palette.size, size=count, p=m[d].p)
        for idx, n in zip(*np.unique(draws, return_counts=True)):
            out[m.palette.colors[int(idx)]] = int(n)
    return out
