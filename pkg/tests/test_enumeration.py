import random
import time

import pytest

from ccv.dartgraph import DartGraph, vertex_map_to_morphism
from ccv.enumeration import (
    canonical_key,
    constructive_extension,
    cyclic_quotients,
    enumerate_quotients,
    induced_labelling,
    label_preserving_isomorphic,
    template_index,
)
from ccv.families import FamilyParams, all_templates, make_family, parameter_points
from ccv.named import complete_graph, named_graph
from ccv import _search
from ccv.voltage import LabelledGraph, expand, extend, is_ccv

QUOTIENT_INDICES = {
    "K4": {1, 3},
    "K33": {1, 4, 5, 16},
    "Q3": {2, 4, 6},
    "Petersen": {2, 19, 21},
    "Heawood": {4, 13, 18},
    "GP(8,3)": {2, 6},
    "Pappus": {5, 22},
    "GP(10,2)": {2},
    "GP(10,3)": {2},
}

# indices found beyond the table, each with a parameter point whose cover is the graph
EXTRA_WITNESSES = {
    "K4": [(6, 1, 1, None), (8, 1, 0, None)],
    "K33": [(24, 2, 1, None)],
    "GP(8,3)": [(4, 8, 1, 3)],
}


def test_enumeration_counts():
    t0 = time.time()
    classes = enumerate_quotients(3)
    assert len(classes) == 25
    assert time.time() - t0 < 10
    assert len(enumerate_quotients(1)) == 1
    assert len(enumerate_quotients(2)) == 7
    for c in classes:
        assert extend(c.representative).extendable


def test_enumeration_matches_templates():
    classes = enumerate_quotients(3)
    assert sorted(template_index(c.representative) for c in classes) == list(range(1, 26))


def test_constructive_extension_gives_ccv_graphs():
    for c in enumerate_quotients(3):
        cvg = constructive_extension(c.representative)
        assert is_ccv(cvg)
        g = expand(cvg).graph
        assert g.is_simple() and g.is_connected() and g.is_regular(3)


def relabelled(lg, rnd):
    g = lg.graph
    vperm = list(g.vertices)
    rnd.shuffle(vperm)
    dperm = list(g.darts)
    rnd.shuffle(dperm)
    beg = [0] * g.n_darts
    inv = [0] * g.n_darts
    lam = [0] * g.n_darts
    for x in g.darts:
        beg[dperm[x]] = vperm[g.beg[x]]
        inv[dperm[x]] = dperm[g.inv[x]]
        lam[dperm[x]] = lg.lam[x]
    return LabelledGraph(DartGraph(g.n_vertices, tuple(beg), tuple(inv)), tuple(lam))


def test_canonical_key_is_stable_under_relabelling():
    rnd = random.Random(7)
    templates = all_templates()
    for _ in range(100):
        t = rnd.choice(templates)
        other = relabelled(t.labelled, rnd)
        assert canonical_key(other) == canonical_key(t.labelled)
        assert label_preserving_isomorphic(other, t.labelled)


def test_label_preserving_isomorphism_examples():
    g = DartGraph.from_edges(2, links=[(0, 1)], semi_edges=[0, 1, 1])
    a = LabelledGraph(g, (2, 1, 1, 1, 1))
    flipped = DartGraph.from_edges(2, links=[(1, 0)], semi_edges=[0, 1, 1])
    b = LabelledGraph(flipped, (1, 2, 1, 1, 1))
    assert label_preserving_isomorphic(a, a)
    assert label_preserving_isomorphic(a, b)
    d12 = LabelledGraph(DartGraph.from_edges(2, links=[(0, 1)]), (1, 2))
    d13 = LabelledGraph(DartGraph.from_edges(2, links=[(0, 1)]), (1, 3))
    assert not label_preserving_isomorphic(d12, d13)


def test_induced_labelling_examples():
    k4 = complete_graph(4)
    triv = induced_labelling(k4, vertex_map_to_morphism(k4, k4, [0, 1, 2, 3]))
    assert set(triv.lam) == {1}
    c6 = DartGraph.simple(6, [(i, (i + 1) % 6) for i in range(6)])
    q = induced_labelling(c6, vertex_map_to_morphism(c6, c6, [(i + 1) % 6 for i in range(6)]))
    assert q.graph.n_vertices == 1 and q.lam == (1, 1)
    four = induced_labelling(k4, vertex_map_to_morphism(k4, k4, [1, 2, 3, 0]))
    assert four.graph.n_vertices == 1
    assert template_index(four) == 1


@pytest.mark.parametrize("name", list(QUOTIENT_INDICES))
def test_quotient_indices_row(name):
    _, indices = cyclic_quotients(named_graph(name))
    assert indices == QUOTIENT_INDICES[name]


@pytest.mark.parametrize("name", list(QUOTIENT_INDICES))
def test_quotient_indices_row_contains_listed_indices(name):
    _, indices = cyclic_quotients(named_graph(name))
    assert QUOTIENT_INDICES[name] <= indices


@pytest.mark.parametrize("name", list(EXTRA_WITNESSES))
def test_indices_beyond_listed_have_explicit_covers(name):
    target = named_graph(name)
    _, indices = cyclic_quotients(target)
    extra = indices - QUOTIENT_INDICES[name]
    witnessed = {p[0] for p in EXTRA_WITNESSES[name]}
    assert extra <= witnessed
    for params in EXTRA_WITNESSES[name]:
        p = FamilyParams(*params)
        cover = expand(make_family(p)).graph
        assert _search.find_isomorphism(cover, target) is not None, p


def test_cyclic_quotients_of_family_covers_are_templates():
    rnd = random.Random(3)
    pts = [p for i in range(1, 26) for p in parameter_points(i, 48)]
    for p in rnd.sample(pts, 40):
        g = expand(make_family(p)).graph
        quots, indices = cyclic_quotients(g)
        assert p.index in indices, p
        assert all(q.index is not None for q in quots), p
