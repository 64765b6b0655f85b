"""Shared generators for randomized test instances.

Feasibility-by-construction is used throughout: vectors mixed toward the
uniform distribution with weight below (e**eps - 1) / (e**eps - 1 + k) keep
every pairwise per-color ratio strictly under e**eps, so specs and source
mechanisms built from them are private on any graph.
"""

from __future__ import annotations

import math

import numpy as np

from rainbowdp import (
    BoundarySpec,
    Epsilon,
    Mechanism,
    Palette,
    ProbVector,
    Rainbow,
    RainbowGraph,
    TERNARY_COLORS,
)

PALETTE3 = Palette(TERNARY_COLORS)
IDENT3 = Rainbow((0, 1, 2))


def make_palette(k: int) -> Palette:
    return PALETTE3 if k == 3 else Palette(tuple(f"c{i}" for i in range(k)))


def random_rainbow(rng, k: int) -> Rainbow:
    return Rainbow(tuple(int(x) for x in rng.permutation(k)))


def random_graph(rng, max_vertices: int = 12, k: int = 3, edge_prob: float = 0.35) -> RainbowGraph:
    palette = make_palette(k)
    n = int(rng.integers(2, max_vertices + 1))
    ids = [f"v{i}" for i in range(n)]
    edges = [
        (ids[i], ids[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_prob
    ]
    pref = {v: random_rainbow(rng, k) for v in ids}
    return RainbowGraph(palette, ids, edges, pref)


def smoothing_weight(eps: Epsilon, k: int) -> float:
    return (eps.factor - 1.0) / (eps.factor - 1.0 + k)


def smoothed_vector(rng, eps: Epsilon, k: int, margin: float = 0.9) -> ProbVector:
    w = margin * smoothing_weight(eps, k)
    raw = rng.dirichlet(np.ones(k))
    p = (1.0 - w) / k + w * raw
    p = p / p.sum()
    return ProbVector(tuple(float(x) for x in p))


def feasible_spec(g: RainbowGraph, eps: Epsilon, rng, margin: float = 0.9) -> BoundarySpec:
    return BoundarySpec(
        {c: smoothed_vector(rng, eps, g.palette.size, margin) for c in set(g.preference.values())}
    )


def smoothed_mechanism(g: RainbowGraph, eps: Epsilon, rng, margin: float = 0.9) -> Mechanism:
    return Mechanism(
        g.palette,
        {v: smoothed_vector(rng, eps, g.palette.size, margin) for v in g.vertices},
    )


def swap_top_two(c: Rainbow) -> Rainbow:
    order = list(c.order)
    order[0], order[1] = order[1], order[0]
    return Rainbow(tuple(order))


def anchored_line(n: int, vec: ProbVector, k: int = 3) -> tuple[RainbowGraph, BoundarySpec, Rainbow]:
    """Path "0".."n-1" of one rainbow whose index-0 vertex is pinned to vec.

    A sentinel vertex "s" with the top two ranks swapped sits next to index 0,
    making it a genuine region boundary; the sentinel gets the same
    color-indexed vector, so the crossing edge is trivially private.
    """
    palette = make_palette(k)
    line_rainbow = Rainbow(tuple(range(k)))
    anchor_rainbow = swap_top_two(line_rainbow)
    ids = ["s"] + [str(i) for i in range(n)]
    edges = [("s", "0")] + [(str(i), str(i + 1)) for i in range(n - 1)]
    pref = {v: line_rainbow for v in ids}
    pref["s"] = anchor_rainbow
    g = RainbowGraph(palette, ids, edges, pref)
    spec = BoundarySpec({line_rainbow: vec, anchor_rainbow: vec})
    return g, spec, line_rainbow


def random_morphism_instance(rng, k: int = 3):
    """A random codomain graph, a random domain built over it, and the map.

    Domain edges are sampled only among pairs whose images are equal or
    adjacent, so the map is a morphism by construction; domain rainbows are
    pulled back from the codomain, so it is also rainbow-preserving.
    """
    g2 = random_graph(rng, max_vertices=8, k=k)
    n1 = int(rng.integers(2, 15))
    ids1 = [f"u{i}" for i in range(n1)]
    mapping = {u: g2.vertices[int(rng.integers(0, g2.num_vertices))] for u in ids1}
    edges1 = []
    for i in range(n1):
        for j in range(i + 1, n1):
            a, b = mapping[ids1[i]], mapping[ids1[j]]
            if (a == b or g2.has_edge(a, b)) and rng.random() < 0.5:
                edges1.append((ids1[i], ids1[j]))
    pref1 = {u: g2.preference[mapping[u]] for u in ids1}
    g1 = RainbowGraph(g2.palette, ids1, edges1, pref1)
    return g1, g2, mapping


def max_abs_dev(m1: Mechanism, m2: Mechanism, vertices) -> float:
    return max(
        (abs(a - b) for v in vertices for a, b in zip(m1[v].p, m2[v].p)),
        default=0.0,
    )
