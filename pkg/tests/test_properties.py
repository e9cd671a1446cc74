"""Quotient-side criteria against brute force on the expanded cover."""

import networkx as nx
from hypothesis import given, settings

from ccv.dartgraph import spanning_tree
from ccv.formats import to_networkx
from ccv.voltage import (
    adjacent_in_cover,
    connected_cover,
    expand,
    is_connected_cover,
    is_simple_cover,
    t_normalise,
    valence_law,
)
from strategies import mixed_graphs

N = 500


def direct_simple(g):
    h = to_networkx(g)
    if nx.number_of_selfloops(h):
        return False
    return all(h.number_of_edges(u, v) == 1 for u, v in h.edges())


@settings(max_examples=N)
@given(mixed_graphs(connected=True))
def test_connectivity_criterion_matches_bfs(cvg):
    tree = spanning_tree(cvg.graph)
    normal = t_normalise(cvg, tree)
    cover = expand(cvg).graph
    assert is_connected_cover(normal, tree) == nx.is_connected(to_networkx(cover))


@settings(max_examples=N)
@given(mixed_graphs())
def test_connected_cover_on_any_base(cvg):
    cover = expand(cvg).graph
    h = to_networkx(cover)
    assert connected_cover(cvg) == (h.number_of_nodes() > 0 and nx.is_connected(h))


@settings(max_examples=N)
@given(mixed_graphs())
def test_simplicity_criterion_matches_cover(cvg):
    assert is_simple_cover(cvg) == direct_simple(expand(cvg).graph)


@settings(max_examples=N)
@given(mixed_graphs(max_order=60))
def test_adjacency_oracle_matches_cover(cvg):
    cov = expand(cvg)
    adj = cov.graph.adjacency_sets
    for a in cov.fibre_of_vertex:
        for b in cov.fibre_of_vertex:
            expected = cov.vertex_id(*b) in adj[cov.vertex_id(*a)]
            assert adjacent_in_cover(cvg, a, b) == expected


@settings(max_examples=N)
@given(mixed_graphs())
def test_valency_law(cvg):
    cov = expand(cvg)
    for w, (v, _) in enumerate(cov.fibre_of_vertex):
        assert cov.graph.valence(w) == valence_law(cvg, v)
