"""Core domain types: color palettes, preference orders, probability vectors,
dataset graphs, and mechanisms.

A dataset graph connects neighboring datasets; each vertex carries a total
preference order over the output colors (its "rainbow"). A mechanism assigns
an output distribution to every vertex. Distributions are stored indexed by
color so that privacy constraints, which bind per output value, can be checked
directly; preference-ranked views are computed on demand.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    NegativeEntryError,
    SizeMismatchError,
    SumNotOneError,
)

#: Membership tolerance for probability vectors.
SIMPLEX_TOL = 1e-12

#: Per-coordinate tolerance for value comparisons between probabilities.
COMPARE_TOL = 1e-9

#: Sentinel for distances and index thresholds with no finite value.
UNBOUNDED = math.inf

#: Conventional palette for three-valued outputs, in priority-neutral order.
TERNARY_COLORS = ("blue", "red", "green")


@dataclass(frozen=True)
class Palette:
    """Ordered universe of output colors."""

    colors: tuple[str, ...]

    def __post_init__(self):
        colors = tuple(self.colors)
        object.__setattr__(self, "colors", colors)
        if len(colors) < 2:
            raise ValueError("a palette needs at least two colors")
        if len(set(colors)) != len(colors):
            raise ValueError(f"palette colors must be unique: {colors}")

    @property
    def size(self) -> int:
        return len(self.colors)

    def index(self, name: str) -> int:
        try:
            return self.colors.index(name)
        except ValueError:
            raise KeyError(f"unknown color {name!r}") from None


@dataclass(frozen=True)
class Rainbow:
    """Total preference order over a palette, as a permutation rank -> color index."""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(i) for i in self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"not a permutation of 0..{len(order) - 1}: {order}")

    @classmethod
    def from_colors(cls, palette: Palette, names: Sequence[str]) -> "Rainbow":
        return cls(tuple(palette.index(n) for n in names))

    def color_names(self, palette: Palette) -> tuple[str, ...]:
        return tuple(palette.colors[i] for i in self.order)

    def inverse(self) -> tuple[int, ...]:
        """Permutation color index -> rank."""
        inv = [0] * len(self.order)
        for rank, color in enumerate(self.order):
            inv[color] = rank
        return tuple(inv)

    @property
    def top(self) -> int:
        """Color index of the most preferred output."""
        return self.order[0]


@dataclass(frozen=True)
class ProbVector:
    """Point of the probability simplex, indexed by color.

    Construction validates membership: entries below -SIMPLEX_TOL raise,
    entries in [-SIMPLEX_TOL, 0) are clamped to 0, and the total must be 1
    within SIMPLEX_TOL.
    """

    p: tuple[float, ...]

    def __post_init__(self):
        entries = tuple(float(x) for x in self.p)
        for i, x in enumerate(entries):
            if x < -SIMPLEX_TOL:
                raise NegativeEntryError(i, x)
        total = math.fsum(entries)
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise SumNotOneError(total)
        clamped = tuple(min(1.0, max(0.0, x)) for x in entries)
        object.__setattr__(self, "p", clamped)

    def __len__(self) -> int:
        return len(self.p)


def validate_prob_vector(p: Sequence[float], k: int) -> ProbVector:
    """Check a raw vector of length k against the simplex and return it clamped."""
    if len(p) != k:
        raise SizeMismatchError(f"expected {k} entries, got {len(p)}")
    return ProbVector(tuple(float(x) for x in p))


def rank_view(p: ProbVector, c: Rainbow) -> tuple[float, ...]:
    """Reindex a color-indexed vector into preference-rank order.

    out[r] is the probability of the rank-r color of c. Applying the inverse
    permutation (from_rank_view) recovers p bit for bit.
    """
    if len(p.p) != len(c.order):
        raise SizeMismatchError(f"vector has {len(p.p)} entries, rainbow has {len(c.order)}")
    return tuple(p.p[i] for i in c.order)


def from_rank_view(values: Sequence[float], c: Rainbow) -> ProbVector:
    """Inverse of rank_view: build a color-indexed vector from ranked values."""
    if len(values) != len(c.order):
        raise SizeMismatchError(f"{len(values)} ranked values for a {len(c.order)}-color rainbow")
    out = [0.0] * len(c.order)
    for rank, color in enumerate(c.order):
        out[color] = float(values[rank])
    return ProbVector(tuple(out))


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def lex_compare(a: Sequence[float], b: Sequence[float], tol: float = COMPARE_TOL) -> Ordering:
    """Lexicographic comparison with per-coordinate tolerance for equality."""
    if len(a) != len(b):
        raise SizeMismatchError(f"cannot compare lengths {len(a)} and {len(b)}")
    for x, y in zip(a, b):
        d = x - y
        if d > tol:
            return Ordering.GREATER
        if d < -tol:
            return Ordering.LESS
    return Ordering.EQUAL


@dataclass(frozen=True)
class Epsilon:
    """Privacy parameter with its cached multiplicative bound e**eps."""

    eps: float
    factor: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        eps = float(self.eps)
        if not math.isfinite(eps) or eps < 0.0:
            raise ValueError(f"eps must be a finite non-negative real, got {eps!r}")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "factor", math.exp(eps))


class RainbowGraph:
    """Undirected graph of datasets with a preference order at every vertex.

    Immutable after construction; neighbor lists are precomputed and sorted so
    traversals are deterministic.
    """

    __slots__ = ("palette", "vertices", "edges", "preference", "_adj", "_edge_set", "_index")

    def __init__(
        self,
        palette: Palette,
        vertices: Sequence[str],
        edges: Iterable[tuple[str, str]],
        preference: Mapping[str, Rainbow],
    ):
        vs = tuple(str(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex ids")
        vset = set(vs)

        normalized: set[tuple[str, str]] = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u!r}, {v!r}) references unknown vertex")
            normalized.add((u, v) if u < v else (v, u))

        pref: dict[str, Rainbow] = {}
        for v in vs:
            try:
                c = preference[v]
            except KeyError:
                raise ValueError(f"vertex {v!r} has no rainbow") from None
            if len(c.order) != palette.size:
                raise SizeMismatchError(
                    f"rainbow at {v!r} has {len(c.order)} ranks, palette has {palette.size}"
                )
            pref[v] = c

        adj: dict[str, list[str]] = {v: [] for v in vs}
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)

        self.palette = palette
        self.vertices = vs
        self.edges = tuple(sorted(normalized))
        self.preference = pref
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._edge_set = normalized
        self._index = {v: i for i, v in enumerate(vs)}

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self._adj[v]

    def has_edge(self, u: str, v: str) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def index(self, v: str) -> int:
        return self._index[v]

    def __contains__(self, v: str) -> bool:
        return v in self._index

    def __repr__(self) -> str:
        return (
            f"RainbowGraph({self.num_vertices} vertices, {len(self.edges)} edges, "
            f"{len(set(self.preference.values()))} rainbows)"
        )


class Mechanism:
    """Assignment of an output distribution to every vertex of a graph."""

    __slots__ = ("palette", "_dist")

    def __init__(self, palette: Palette, dist: Mapping[str, ProbVector]):
        for v, p in dist.items():
            if len(p.p) != palette.size:
                raise SizeMismatchError(f"distribution at {v!r} has {len(p.p)} entries")
        self.palette = palette
        self._dist = dict(dist)

    def __getitem__(self, v: str) -> ProbVector:
        return self._dist[v]

    def __contains__(self, v: str) -> bool:
        return v in self._dist

    def __len__(self) -> int:
        return len(self._dist)

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self._dist)

    def items(self):
        return self._dist.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mechanism):
            return NotImplemented
        return self.palette == other.palette and self._dist == other._dist

    def __repr__(self) -> str:
        return f"Mechanism({len(self._dist)} vertices, {self.palette.size} colors)"
