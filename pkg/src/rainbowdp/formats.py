"""Line-delimited text formats for graphs, boundary specs, and mechanisms.

All three formats are whitespace-tokenized, one record per line, with blank
lines and `#` comments ignored. Probabilities are written with 17 significant
digits so a write/read round trip reproduces the in-memory values exactly.

Graph file:
    colors <name> ...                one line, at least two names
    vertex <id> <name> ...           rainbow as color names, rank order
    edge <id> <id>

Spec file:
    eps <float>
    colors <name> ...                palette order the probabilities use
    boundary <name> ... : <p> ...    rainbow (rank order), ':', then one
                                     probability per color in palette order

Mechanism file:
    colors <name> ...
    vertex <id> <rainbow> <dist> <p> ...
                                     rainbow as names joined by '>', distance
                                     to boundary (int or inf), probabilities
                                     in palette color order
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .mechanism import BoundarySpec
from .model import (
    Epsilon,
    Mechanism,
    Palette,
    ProbVector,
    Rainbow,
    RainbowGraph,
    UNBOUNDED,
    validate_prob_vector,
)
from .topology import decompose, distance_to_boundary


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _clean_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _parse_float(token: str, path: str | None, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", path, lineno) from None


def _parse_palette(tokens: list[str], path: str | None, lineno: int) -> Palette:
    try:
        return Palette(tuple(tokens))
    except ValueError as err:
        raise ParseError(str(err), path, lineno) from None


def _check_id(vid: str):
    if any(ch.isspace() for ch in vid) or "#" in vid:
        raise ValueError(f"vertex id {vid!r} contains whitespace or '#'")


# ---------------------------------------------------------------- graph files

def parse_graph(text: str, path: str | None = None) -> RainbowGraph:
    palette: Palette | None = None
    vertices: list[str] = []
    preference: dict[str, Rainbow] = {}
    edges: list[tuple[str, str]] = []
    for lineno, tokens in _clean_lines(text):
        kind, rest = tokens[0], tokens[1:]
        if kind == "colors":
            if palette is not None:
                raise ParseError("duplicate colors line", path, lineno)
            palette = _parse_palette(rest, path, lineno)
        elif kind == "vertex":
            if palette is None:
                raise ParseError("vertex before colors line", path, lineno)
            if len(rest) != 1 + palette.size:
                raise ParseError(
                    f"vertex needs an id and {palette.size} color names", path, lineno
                )
            vid, names = rest[0], rest[1:]
            if vid in preference:
                raise ParseError(f"duplicate vertex {vid!r}", path, lineno)
            try:
                preference[vid] = Rainbow.from_colors(palette, names)
            except (KeyError, ValueError) as err:
                raise ParseError(str(err), path, lineno) from None
            vertices.append(vid)
        elif kind == "edge":
            if len(rest) != 2:
                raise ParseError("edge needs exactly two vertex ids", path, lineno)
            edges.append((rest[0], rest[1]))
        else:
            raise ParseError(f"unknown record {kind!r}", path, lineno)
    if palette is None:
        raise ParseError("missing colors line", path)
    try:
        return RainbowGraph(palette, vertices, edges, preference)
    except ValueError as err:
        raise ParseError(str(err), path) from None


def dump_graph(g: RainbowGraph) -> str:
    lines = ["colors " + " ".join(g.palette.colors)]
    for v in g.vertices:
        _check_id(v)
        lines.append(f"vertex {v} " + " ".join(g.preference[v].color_names(g.palette)))
    for u, v in g.edges:
        lines.append(f"edge {u} {v}")
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> RainbowGraph:
    return parse_graph(Path(path).read_text(), str(path))


def write_graph(g: RainbowGraph, path: str | Path) -> None:
    Path(path).write_text(dump_graph(g))


# ----------------------------------------------------------------- spec files

def parse_spec(text: str, path: str | None = None) -> tuple[Epsilon, BoundarySpec, Palette]:
    eps: Epsilon | None = None
    palette: Palette | None = None
    table: dict[Rainbow, ProbVector] = {}
    for lineno, tokens in _clean_lines(text):
        kind, rest = tokens[0], tokens[1:]
        if kind == "eps":
            if eps is not None:
                raise ParseError("duplicate eps line", path, lineno)
            if len(rest) != 1:
                raise ParseError("eps needs exactly one value", path, lineno)
            try:
                eps = Epsilon(_parse_float(rest[0], path, lineno))
            except ValueError as err:
                raise ParseError(str(err), path, lineno) from None
        elif kind == "colors":
            if palette is not None:
                raise ParseError("duplicate colors line", path, lineno)
            palette = _parse_palette(rest, path, lineno)
        elif kind == "boundary":
            if palette is None:
                raise ParseError("boundary before colors line", path, lineno)
            if ":" not in rest:
                raise ParseError("boundary needs a ':' separator", path, lineno)
            sep = rest.index(":")
            names, probs = rest[:sep], rest[sep + 1 :]
            if len(names) != palette.size or len(probs) != palette.size:
                raise ParseError(
                    f"boundary needs {palette.size} color names, ':', then "
                    f"{palette.size} probabilities",
                    path,
                    lineno,
                )
            try:
                rainbow = Rainbow.from_colors(palette, names)
                vec = validate_prob_vector(
                    [_parse_float(t, path, lineno) for t in probs], palette.size
                )
            except (KeyError, ValueError) as err:
                raise ParseError(str(err), path, lineno) from None
            if rainbow in table:
                raise ParseError("duplicate rainbow", path, lineno)
            table[rainbow] = vec
        else:
            raise ParseError(f"unknown record {kind!r}", path, lineno)
    if eps is None:
        raise ParseError("missing eps line", path)
    if palette is None:
        raise ParseError("missing colors line", path)
    if not table:
        raise ParseError("no boundary lines", path)
    return eps, BoundarySpec(table), palette


def dump_spec(eps: Epsilon, spec: BoundarySpec, palette: Palette) -> str:
    lines = [f"eps {_fmt(eps.eps)}", "colors " + " ".join(palette.colors)]
    for rainbow, vec in spec.items():
        names = " ".join(rainbow.color_names(palette))
        probs = " ".join(_fmt(x) for x in vec.p)
        lines.append(f"boundary {names} : {probs}")
    return "\n".join(lines) + "\n"


def read_spec(path: str | Path) -> tuple[Epsilon, BoundarySpec, Palette]:
    return parse_spec(Path(path).read_text(), str(path))


def write_spec(eps: Epsilon, spec: BoundarySpec, palette: Palette, path: str | Path) -> None:
    Path(path).write_text(dump_spec(eps, spec, palette))


# ------------------------------------------------------------ mechanism files

def parse_mechanism(text: str, path: str | None = None) -> Mechanism:
    palette: Palette | None = None
    dist: dict[str, ProbVector] = {}
    for lineno, tokens in _clean_lines(text):
        kind, rest = tokens[0], tokens[1:]
        if kind == "colors":
            if palette is not None:
                raise ParseError("duplicate colors line", path, lineno)
            palette = _parse_palette(rest, path, lineno)
        elif kind == "vertex":
            if palette is None:
                raise ParseError("vertex before colors line", path, lineno)
            if len(rest) != 3 + palette.size:
                raise ParseError(
                    "vertex needs id, rainbow, distance, and one probability per color",
                    path,
                    lineno,
                )
            vid, rainbow_token, dist_token = rest[0], rest[1], rest[2]
            if vid in dist:
                raise ParseError(f"duplicate vertex {vid!r}", path, lineno)
            try:
                Rainbow.from_colors(palette, rainbow_token.split(">"))
            except (KeyError, ValueError) as err:
                raise ParseError(str(err), path, lineno) from None
            if dist_token != "inf":
                try:
                    if int(dist_token) < 0:
                        raise ValueError
                except ValueError:
                    raise ParseError(
                        f"bad distance {dist_token!r}", path, lineno
                    ) from None
            try:
                dist[vid] = validate_prob_vector(
                    [_parse_float(t, path, lineno) for t in rest[3:]], palette.size
                )
            except ValueError as err:
                raise ParseError(str(err), path, lineno) from None
        else:
            raise ParseError(f"unknown record {kind!r}", path, lineno)
    if palette is None:
        raise ParseError("missing colors line", path)
    return Mechanism(palette, dist)


def dump_mechanism(m: Mechanism, g: RainbowGraph) -> str:
    if set(m.vertices) != set(g.vertices):
        raise ValueError("mechanism and graph vertex sets differ")
    dists: dict[str, int | float] = {}
    for region in decompose(g):
        dists.update(distance_to_boundary(g, region))
    lines = ["colors " + " ".join(g.palette.colors)]
    for v in g.vertices:
        _check_id(v)
        rainbow = ">".join(g.preference[v].color_names(g.palette))
        d = "inf" if dists[v] == UNBOUNDED else str(int(dists[v]))
        probs = " ".join(_fmt(x) for x in m[v].p)
        lines.append(f"vertex {v} {rainbow} {d} {probs}")
    return "\n".join(lines) + "\n"


def read_mechanism(path: str | Path) -> Mechanism:
    return parse_mechanism(Path(path).read_text(), str(path))


def write_mechanism(m: Mechanism, g: RainbowGraph, path: str | Path) -> None:
    Path(path).write_text(dump_mechanism(m, g))
