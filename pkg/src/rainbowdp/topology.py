"""Region decomposition, boundary distances, and the quotient onto lines.

Vertices sharing a rainbow form a region. A region vertex is boundary if it
has a neighbor outside the region, interior otherwise. Collapsing every
vertex to the pair (rainbow, distance to its region's boundary) is a
rainbow-preserving morphism onto a graph made of one path per rainbow, joined
at their distance-0 nodes. Solving on that quotient and pulling back is how
the per-graph solvers work.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .errors import EmptyBoundaryRegionError
from .model import Palette, Rainbow, RainbowGraph, UNBOUNDED


@dataclass(frozen=True)
class Region:
    """All vertices carrying one rainbow, split into boundary and interior."""

    rainbow: Rainbow
    members: frozenset[str]
    boundary: frozenset[str]
    interior: frozenset[str]


@dataclass(frozen=True)
class BoundaryLabel:
    """Image of a vertex under the boundary quotient.

    dist is the hop count to the nearest boundary vertex along paths that stay
    inside the region; UNBOUNDED when the vertex's connected piece of the
    region has no boundary vertex at all.
    """

    rainbow: Rainbow
    dist: int | float

    def __post_init__(self):
        if self.dist != UNBOUNDED:
            object.__setattr__(self, "dist", int(self.dist))


def decompose(g: RainbowGraph) -> list[Region]:
    """Partition the vertex set into regions, one per occurring rainbow."""
    members: dict[Rainbow, set[str]] = {}
    for v in g.vertices:
        members.setdefault(g.preference[v], set()).add(v)

    regions = []
    for rainbow in sorted(members, key=lambda c: c.order):
        ms = members[rainbow]
        boundary = {
            v for v in ms if any(g.preference[w] != rainbow for w in g.neighbors(v))
        }
        regions.append(
            Region(rainbow, frozenset(ms), frozenset(boundary), frozenset(ms - boundary))
        )
    return regions


def distance_to_boundary(g: RainbowGraph, region: Region) -> dict[str, int | float]:
    """Multi-source BFS from the region boundary, restricted to region members.

    Vertices that cannot reach a boundary vertex without leaving the region
    get UNBOUNDED. Only the distance values are meaningful; traversal order is
    not observable in the result.
    """
    dist: dict[str, int | float] = {v: UNBOUNDED for v in region.members}
    queue: deque[str] = deque()
    for v in sorted(region.boundary):
        dist[v] = 0
        queue.append(v)
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w in region.members and dist[w] == UNBOUNDED:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _label_key(label: BoundaryLabel) -> tuple:
    return (label.rainbow.order, label.dist)


class BoundaryGraph:
    """Quotient of a rainbow graph under the boundary morphism.

    One path of labels (c, 0) .. (c, n_c) per rainbow with reachable boundary,
    a single isolated (c, UNBOUNDED) label per rainbow that occurs in
    boundary-free pieces, and cross-rainbow edges only between distance-0
    labels.
    """

    __slots__ = ("palette", "nodes", "edges", "max_dist", "_graph")

    def __init__(self, palette: Palette, nodes, edges):
        nodes = frozenset(nodes)
        norm = set()
        for a, b in edges:
            if a == b:
                raise ValueError("self-loop among labels")
            pair = tuple(sorted((a, b), key=_label_key))
            if a.rainbow == b.rainbow:
                if a.dist == UNBOUNDED or b.dist == UNBOUNDED or abs(a.dist - b.dist) != 1:
                    raise ValueError(f"same-rainbow labels not one hop apart: {a}, {b}")
            elif a.dist != 0 or b.dist != 0:
                raise ValueError(f"cross-rainbow edge away from the boundary: {a}, {b}")
            norm.add(pair)

        max_dist: dict[Rainbow, int] = {}
        for label in nodes:
            if label.dist != UNBOUNDED:
                cur = max_dist.get(label.rainbow, -1)
                if label.dist > cur:
                    max_dist[label.rainbow] = label.dist

        self.palette = palette
        self.nodes = nodes
        self.edges = tuple(sorted(norm, key=lambda p: (_label_key(p[0]), _label_key(p[1]))))
        self.max_dist = max_dist
        self._graph = None

    def vertex_id(self, label: BoundaryLabel) -> str:
        names = ">".join(label.rainbow.color_names(self.palette))
        d = "inf" if label.dist == UNBOUNDED else str(label.dist)
        return f"{names}@{d}"

    def to_rainbow_graph(self) -> RainbowGraph:
        """The quotient as an ordinary rainbow graph over label ids."""
        if self._graph is None:
            ids = {label: self.vertex_id(label) for label in self.nodes}
            self._graph = RainbowGraph(
                self.palette,
                sorted(ids.values()),
                [(ids[a], ids[b]) for a, b in self.edges],
                {ids[label]: label.rainbow for label in self.nodes},
            )
        return self._graph

    def __repr__(self) -> str:
        return f"BoundaryGraph({len(self.nodes)} labels, {len(self.edges)} edges)"


def boundary_morphism(
    g: RainbowGraph, allow_unbounded: bool = False
) -> tuple[BoundaryGraph, dict[str, BoundaryLabel]]:
    """Collapse each vertex to (rainbow, distance to boundary).

    Raises EmptyBoundaryRegionError if some vertex cannot reach a boundary
    vertex inside its region, unless allow_unbounded is set, in which case
    such vertices map to an isolated (rainbow, UNBOUNDED) label.
    """
    labels: dict[str, BoundaryLabel] = {}
    for region in decompose(g):
        dist = distance_to_boundary(g, region)
        for v in region.members:
            if dist[v] == UNBOUNDED and not allow_unbounded:
                raise EmptyBoundaryRegionError(
                    f"vertex {v!r} cannot reach a boundary inside its region"
                )
            labels[v] = BoundaryLabel(region.rainbow, dist[v])

    edges = set()
    for u, v in g.edges:
        lu, lv = labels[u], labels[v]
        if lu != lv:
            edges.add(tuple(sorted((lu, lv), key=_label_key)))
    return BoundaryGraph(g.palette, set(labels.values()), edges), labels


def is_rainbow_preserving(
    mapping: Mapping[str, str], g1: RainbowGraph, g2: RainbowGraph
) -> bool:
    """True iff mapping is a morphism g1 -> g2 that commutes with the rainbows.

    The morphism condition: adjacent vertices map to equal or adjacent images.
    """
    for v in g1.vertices:
        img = mapping.get(v)
        if img is None or img not in g2:
            return False
        if g1.preference[v] != g2.preference[img]:
            return False
    for u, v in g1.edges:
        a, b = mapping[u], mapping[v]
        if a != b and not g2.has_edge(a, b):
            return False
    return True
