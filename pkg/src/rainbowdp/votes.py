"""Vote-tally graph generator.

Vertices are the possible tallies of `num_voters` votes over `options`
choices; two tallies are neighbors when one vote moves between choices, which
is the smallest change a single voter can make. Each tally prefers colors by
descending count, breaking ties by color index. That tie rule is a convention
of this generator, chosen so graphs are a pure function of their parameters.
"""

from __future__ import annotations

from .model import Palette, Rainbow, RainbowGraph, TERNARY_COLORS


def _tallies(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _tallies(total - first, parts - 1):
            yield (first,) + rest


def tally_rainbow(tally: tuple[int, ...]) -> Rainbow:
    """Preference order induced by a tally: most votes first, ties by index."""
    return Rainbow(tuple(sorted(range(len(tally)), key=lambda j: (-tally[j], j))))


def _tally_id(tally: tuple[int, ...]) -> str:
    return "-".join(str(c) for c in tally)


def vote_graph(num_voters: int, options: int = 3) -> RainbowGraph:
    """Graph of all vote tallies with one-vote-moved adjacency.

    Vertex count is C(num_voters + options - 1, options - 1); every edge
    connects tallies at L1 distance exactly 2.
    """
    if num_voters < 1:
        raise ValueError("num_voters must be at least 1")
    if options < 2:
        raise ValueError("options must be at least 2")
    colors = TERNARY_COLORS if options == 3 else tuple(f"c{i}" for i in range(options))
    palette = Palette(colors)

    tallies = list(_tallies(num_voters, options))
    ids = {t: _tally_id(t) for t in tallies}
    edges = set()
    for t in tallies:
        for i in range(options):
            if t[i] == 0:
                continue
            for j in range(options):
                if i == j:
                    continue
                moved = list(t)
                moved[i] -= 1
                moved[j] += 1
                a, b = ids[t], ids[tuple(moved)]
                edges.add((a, b) if a < b else (b, a))

    return RainbowGraph(
        palette,
        [ids[t] for t in tallies],
        edges,
        {ids[t]: tally_rainbow(t) for t in tallies},
    )
