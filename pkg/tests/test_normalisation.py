"""Voltage reduction, tree normalisation and unit scaling preserve the cover."""

import math

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ccv.dartgraph import is_isomorphism, spanning_tree
from ccv.voltage import (
    expand,
    faithful_n,
    is_t_normalised,
    reduce_voltages,
    reduction_witness,
    scale_voltages,
    scale_witness,
    t_normalise,
    t_normalise_witness,
)
from strategies import mixed_graphs

N = 250
SMALL = 64


@settings(max_examples=N)
@given(mixed_graphs(max_order=SMALL))
def test_reduction_gives_the_same_cover(cvg):
    red = reduce_voltages(cvg)
    a, b = expand(cvg).graph, expand(red).graph
    w = reduction_witness(cvg, red)
    assert w.vertex_map == tuple(range(a.n_vertices))
    assert is_isomorphism(a, b, w)
    assert a.beg == b.beg
    if all(lam == 1 for lam in cvg.lam):
        assert a == b


@settings(max_examples=N)
@given(mixed_graphs(max_order=SMALL, connected=True), st.data())
def test_t_normalisation_witness(cvg, data):
    g = cvg.graph
    assume(g.is_connected())
    links = [x for x in g.edges if g.classify_edge(x) == "link"]
    required = data.draw(st.lists(st.sampled_from(links), max_size=1)) if links else []
    tree = spanning_tree(g, required)
    normal = t_normalise(cvg, tree)
    assert is_t_normalised(normal, tree)
    w = t_normalise_witness(cvg, tree)
    assert is_isomorphism(expand(cvg).graph, expand(normal).graph, w)


@settings(max_examples=N)
@given(mixed_graphs(max_order=SMALL), st.integers(1, 500))
def test_scaling_by_a_unit(cvg, a):
    n = math.lcm(faithful_n(cvg), *cvg.iota)
    assume(math.gcd(a, n) == 1)
    scaled = scale_voltages(cvg, a)
    w = scale_witness(cvg, a)
    assert is_isomorphism(expand(cvg).graph, expand(scaled).graph, w)
