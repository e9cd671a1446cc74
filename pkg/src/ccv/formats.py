"""Text formats: ``.dgf`` dart graphs, ``.cvg`` voltage graphs, graph6 and dot.

``.dgf`` is line oriented::

    dgf 1
    # comment
    v <vertex count>
    d <dart> <beg vertex> <inverse dart>

``.cvg`` starts with ``cvg 1`` and adds ``l <dart> <label>``,
``i <vertex> <index>`` and ``z <dart> <voltage>`` lines.  Missing ``z`` lines
mean voltage 0; missing ``l`` and ``i`` lines mean 1.  Writers emit comments
first, then ``v``, ``d``, ``l``, ``i`` and nonzero ``z`` lines in id order, so
parsing and re-writing a written file reproduces it byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .dartgraph import DartGraph, GraphError
from .voltage import CyclicVoltageGraph, LabelledGraph, VoltageError


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class _Record:
    tag: str
    fields: list[int]
    line: int


def _tokenise(text: str, header: str, tags: dict[str, int]) -> tuple[list[_Record], list[str]]:
    records: list[_Record] = []
    comments: list[str] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            comments.append(stripped[1:].strip())
            continue
        col = raw.index(stripped[0]) + 1
        parts = stripped.split()
        if not seen_header:
            if parts != [header, "1"]:
                raise FormatError(f"expected header '{header} 1'", lineno, col)
            seen_header = True
            continue
        tag = parts[0]
        if tag not in tags:
            raise FormatError(f"unknown record type {tag!r}", lineno, col)
        if len(parts) - 1 != tags[tag]:
            raise FormatError(f"record {tag!r} takes {tags[tag]} fields", lineno, col)
        vals = []
        pos = col + len(tag)
        for p in parts[1:]:
            pos = raw.index(p, pos) + 1
            try:
                vals.append(int(p))
            except ValueError:
                raise FormatError(f"expected an integer, got {p!r}", lineno, pos) from None
            pos += len(p) - 1
        records.append(_Record(tag, vals, lineno))
    if not seen_header:
        raise FormatError(f"missing header '{header} 1'", 1, 1)
    return records, comments


def _graph_from_records(records: list[_Record]) -> DartGraph:
    counts = [r for r in records if r.tag == "v"]
    if len(counts) != 1:
        line = counts[1].line if len(counts) > 1 else None
        raise FormatError("exactly one 'v' line is required", line, 1 if line else None)
    n = counts[0].fields[0]
    if n < 0:
        raise FormatError("vertex count must be nonnegative", counts[0].line, 1)
    darts = {}
    for r in records:
        if r.tag != "d":
            continue
        x, b, y = r.fields
        if x in darts:
            raise FormatError(f"dart {x} defined twice", r.line, 1)
        darts[x] = (b, y, r.line)
    nd = len(darts)
    if sorted(darts) != list(range(nd)):
        raise FormatError("dart ids must be 0..count-1")
    beg = [darts[x][0] for x in range(nd)]
    inv = [darts[x][1] for x in range(nd)]
    try:
        return DartGraph(n, tuple(beg), tuple(inv))
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def parse_dgf(text: str, keep_comments: bool = False):
    records, comments = _tokenise(text, "dgf", {"v": 1, "d": 3})
    g = _graph_from_records(records)
    return (g, comments) if keep_comments else g


def _comment_lines(comments: Sequence[str]) -> list[str]:
    return [f"# {c}".rstrip() for c in comments]


def write_dgf(g: DartGraph, comments: Sequence[str] = ()) -> str:
    lines = ["dgf 1", *_comment_lines(comments), f"v {g.n_vertices}"]
    lines += [f"d {x} {g.beg[x]} {g.inv[x]}" for x in g.darts]
    return "\n".join(lines) + "\n"


def parse_cvg(text: str, keep_comments: bool = False):
    records, comments = _tokenise(text, "cvg", {"v": 1, "d": 3, "l": 2, "i": 2, "z": 2})
    g = _graph_from_records(records)
    lam = [1] * g.n_darts
    iota = [1] * g.n_vertices
    zeta = [0] * g.n_darts
    seen: set[tuple[str, int]] = set()
    for r in records:
        if r.tag in ("v", "d"):
            continue
        k, val = r.fields
        limit = g.n_vertices if r.tag == "i" else g.n_darts
        if not 0 <= k < limit:
            raise FormatError(f"{r.tag!r} line refers to unknown id {k}", r.line, 1)
        if (r.tag, k) in seen:
            raise FormatError(f"duplicate {r.tag!r} line for id {k}", r.line, 1)
        seen.add((r.tag, k))
        if r.tag == "l":
            lam[k] = val
        elif r.tag == "i":
            iota[k] = val
        else:
            zeta[k] = val
    try:
        cvg = CyclicVoltageGraph(LabelledGraph(g, tuple(lam)), tuple(iota), tuple(zeta))
    except VoltageError as exc:
        raise FormatError(str(exc)) from None
    return (cvg, comments) if keep_comments else cvg


def write_cvg(cvg: CyclicVoltageGraph, comments: Sequence[str] = ()) -> str:
    g = cvg.graph
    lines = ["cvg 1", *_comment_lines(comments), f"v {g.n_vertices}"]
    lines += [f"d {x} {g.beg[x]} {g.inv[x]}" for x in g.darts]
    lines += [f"l {x} {cvg.lam[x]}" for x in g.darts]
    lines += [f"i {v} {cvg.iota[v]}" for v in g.vertices]
    lines += [f"z {x} {cvg.zeta[x]}" for x in g.darts if cvg.zeta[x]]
    return "\n".join(lines) + "\n"


# -- graph6 and dot -------------------------------------------------------------


def to_networkx(g: DartGraph) -> nx.MultiGraph:
    """Multigraph with one edge per dart pair; semi-edges become self-loops tagged ``semi``."""
    h = nx.MultiGraph()
    h.add_nodes_from(g.vertices)
    for x in g.edges:
        y = g.inv[x]
        h.add_edge(g.beg[x], g.beg[y], dart=x, semi=(x == y))
    return h


def write_graph6(g: DartGraph) -> str:
    if not g.is_simple():
        raise GraphError("graph6 export needs a simple graph")
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edge_list())
    return nx.to_graph6_bytes(h, header=False).decode("ascii").strip()


def parse_graph6(text: str) -> DartGraph:
    data = text.strip().encode("ascii")
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    try:
        h = nx.from_graph6_bytes(data)
    except (nx.NetworkXError, ValueError) as exc:
        raise FormatError(f"bad graph6 data: {exc}") from None
    return DartGraph.simple(h.number_of_nodes(), h.edges())


def write_dot(g: DartGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f"  {v};")
    for x in g.edges:
        y = g.inv[x]
        u = g.beg[x]
        if x == y:
            lines.append(f"  s{x} [shape=point];")
            lines.append(f"  {u} -- s{x} [style=dashed];")
        else:
            lines.append(f"  {u} -- {g.beg[y]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
