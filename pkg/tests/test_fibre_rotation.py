"""The cyclic group rotating fibres acts on every cover with the fibres as orbits."""

from hypothesis import given, settings

from ccv.dartgraph import Morphism, is_automorphism, vertex_orbits
from ccv.voltage import expand, fibre_rotation
from strategies import mixed_graphs

N = 120


@settings(max_examples=N)
@given(mixed_graphs(max_order=60))
def test_rotations_form_a_cyclic_group_with_fibre_orbits(cvg):
    cover = expand(cvg)
    g = cover.graph
    n = cover.n
    rot = [fibre_rotation(cover, a) for a in range(n)]
    for f in rot:
        assert is_automorphism(g, f)
    for a in range(n):
        for b in range(n):
            assert rot[a].compose(rot[b]) == rot[(a + b) % n]
    assert rot[0] == Morphism.identity(g)
    orbits = vertex_orbits(g, [rot[1 % n]])
    assert sorted(map(sorted, orbits.blocks)) == sorted(cover.fibres())
