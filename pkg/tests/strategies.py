"""Hypothesis strategies for random cyclic voltage graphs."""

import math

from hypothesis import strategies as st

from ccv.dartgraph import DartGraph
from ccv.families import FamilyParams, make_family, parameter_points
from ccv.voltage import CyclicVoltageGraph, LabelledGraph

MAX_ORDER = 200


@st.composite
def voltage_graphs(draw, max_vertices=4, max_edges=6, max_index=12, max_order=MAX_ORDER, connected=False):
    """Random extendable labelled graph with random (valid) voltages.

    Labels are derived from a random index function so the ratio condition
    holds by construction; every voltage is random modulo its fibre size.
    """
    n = draw(st.integers(1, max_vertices))
    iota = draw(st.lists(st.integers(1, max_index), min_size=n, max_size=n))
    if sum(iota) > max_order:
        iota = [max(1, i * max_order // (sum(iota) + 1)) for i in iota]
    kinds = draw(
        st.lists(
            st.tuples(
                st.sampled_from(["link", "loop", "semi"]),
                st.integers(0, n - 1),
                st.integers(0, n - 1),
                st.integers(1, 2),
            ),
            min_size=0 if not connected else n - 1,
            max_size=max_edges,
        )
    )
    edges = []
    if connected:
        # a random spanning path first so the base graph is connected
        for v in range(1, n):
            edges.append(("link", draw(st.integers(0, v - 1)), v, draw(st.integers(1, 2))))
    for kind, u, v, k in kinds:
        if kind == "link" and u == v:
            kind = "loop"
        edges.append((kind, u, v, k))
    beg, inv, lam, carriers = [], [], [], []
    for kind, u, v, k in edges:
        d = len(beg)
        if kind == "link":
            g = math.gcd(iota[u], iota[v])
            beg += [u, v]
            inv += [d + 1, d]
            lam += [k * iota[v] // g, k * iota[u] // g]
            carriers.append(d)
        elif kind == "loop":
            beg += [u, u]
            inv += [d + 1, d]
            lam += [k, k]
            carriers.append(d)
        else:
            beg.append(u)
            inv.append(d)
            lam.append(k)
            carriers.append(d)
    graph = DartGraph(n, tuple(beg), tuple(inv))
    lg = LabelledGraph(graph, tuple(lam))
    volts = {}
    for x in carriers:
        size = lam[x] * iota[beg[x]]
        if inv[x] == x:
            choices = [0, size // 2] if size % 2 == 0 else [0]
            volts[x] = draw(st.sampled_from(choices))
        else:
            volts[x] = draw(st.integers(0, size - 1))
    return CyclicVoltageGraph.from_carriers(lg, tuple(iota), volts)


@st.composite
def template_instances(draw, max_order=MAX_ORDER):
    """A template at a random index scale with arbitrary valid voltages."""
    from ccv.families import quotient_template

    t = quotient_template(draw(st.integers(1, 25)))
    base = t.min_iota[t.distinguished_vertex]
    top = max(1, max_order // t.order(base))
    m = base * draw(st.integers(1, top))
    iota = t.iota_for(m)
    g = t.graph
    volts = {}
    for x in g.edges:
        size = t.labelled.lam[x] * iota[g.beg[x]]
        if g.inv[x] == x:
            volts[x] = draw(st.sampled_from([0, size // 2] if size % 2 == 0 else [0]))
        else:
            volts[x] = draw(st.integers(0, size - 1))
    return CyclicVoltageGraph.from_carriers(t.labelled, iota, volts)


def mixed_graphs(max_order=MAX_ORDER, connected=False):
    return st.one_of(
        voltage_graphs(max_order=max_order, connected=connected),
        template_instances(max_order=max_order),
    )


def _small_points(max_order):
    return [p for i in range(1, 26) for p in parameter_points(i, max_order)]


_POINTS = {}


def family_points(max_order=64):
    if max_order not in _POINTS:
        _POINTS[max_order] = _small_points(max_order)
    return st.sampled_from(_POINTS[max_order])


def family_graphs(max_order=64):
    return family_points(max_order).map(make_family)


__all__ = ["voltage_graphs", "template_instances", "mixed_graphs", "family_points", "family_graphs", "FamilyParams"]
