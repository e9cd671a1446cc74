import networkx as nx
import pytest
from hypothesis import given, settings

from ccv import _search
from ccv.dartgraph import DartGraph, GraphError
from ccv.families import FamilyParams, golden_text, make_family
from ccv.formats import (
    FormatError,
    parse_cvg,
    parse_dgf,
    parse_graph6,
    to_networkx,
    write_cvg,
    write_dgf,
    write_dot,
    write_graph6,
)
from ccv.named import cube, named_graph
from ccv.voltage import expand
from strategies import mixed_graphs


@settings(max_examples=200)
@given(mixed_graphs())
def test_cvg_round_trip(cvg):
    text = write_cvg(cvg, ["a comment"])
    back, comments = parse_cvg(text, keep_comments=True)
    assert back == cvg
    assert comments == ["a comment"]
    assert write_cvg(back, comments) == text


@settings(max_examples=200)
@given(mixed_graphs())
def test_dgf_round_trip(cvg):
    g = expand(cvg).graph
    text = write_dgf(g)
    assert parse_dgf(text) == g
    assert write_dgf(parse_dgf(text)) == text


@pytest.mark.parametrize("name", ["Petersen", "Heawood", "TutteCoxeter", "Pappus"])
def test_graph6_round_trip(name):
    g = named_graph(name)
    back = parse_graph6(write_graph6(g))
    assert _search.find_isomorphism(g, back) is not None


def test_graph6_of_cube():
    q3 = expand(make_family(FamilyParams(6, 2, 1))).graph
    text = write_graph6(q3)
    h = nx.from_graph6_bytes(text.encode())
    assert nx.is_isomorphic(h, nx.hypercube_graph(3))


def test_graph6_needs_simple_graph():
    with pytest.raises(GraphError):
        write_graph6(DartGraph.from_edges(1, semi_edges=[0]))


def test_parse_errors_report_positions():
    with pytest.raises(FormatError) as err:
        parse_cvg("cvg 1\nv 2\nd 0 0 q\n")
    assert err.value.line == 3 and err.value.column == 7
    with pytest.raises(FormatError, match="header"):
        parse_dgf("v 1\n")
    with pytest.raises(FormatError, match="unknown record"):
        parse_dgf("dgf 1\nv 1\nw 2\n")
    with pytest.raises(FormatError):
        parse_dgf("dgf 1\nv 1\nd 0 0 1\n")
    with pytest.raises(FormatError, match="ratio"):
        parse_cvg("cvg 1\nv 2\nd 0 0 1\nd 1 1 0\ni 0 2\n")


def test_defaults_in_cvg():
    text = "cvg 1\nv 1\nd 0 0 1\nd 1 0 0\ni 0 5\nz 0 2\nz 1 3\n"
    cvg = parse_cvg(text)
    assert cvg.lam == (1, 1) and cvg.iota == (5,) and cvg.zeta == (2, 3)


def test_golden_files_parse():
    for i in range(1, 26):
        cvg = parse_cvg(golden_text(i))
        assert cvg.graph.n_vertices <= 3


def test_networkx_and_dot_export():
    g = DartGraph.from_edges(2, links=[(0, 1)], semi_edges=[0])
    h = to_networkx(g)
    assert h.number_of_edges() == 2
    dot = write_dot(g)
    assert dot.startswith("graph G {") and "0 -- 1;" in dot and "style=dashed" in dot
    assert write_dot(cube()).count("--") == 12
