"""Brute-force enumeration of cubic quotient shapes and recognition of cyclic quotients."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from . import _search
from .dartgraph import DartGraph, GraphError, Morphism, is_automorphism, quotient
from .voltage import (
    CyclicVoltageGraph,
    LabelledGraph,
    dipole_k33,
    extend,
)

_LABEL_SETS = ((3,), (1, 2), (1, 1, 1))


@dataclass(frozen=True)
class LabelledIsoClass:
    representative: LabelledGraph
    canonical_key: bytes


def _edge_records(lg: LabelledGraph, perm: Sequence[int]) -> tuple:
    g = lg.graph
    lam = lg.lam
    recs = []
    for x in g.edges:
        y = g.inv[x]
        u, v = perm[g.beg[x]], perm[g.beg[y]]
        if x == y:
            recs.append((0, u, u, lam[x], lam[x]))
        elif u == v:
            a, b = sorted((lam[x], lam[y]))
            recs.append((1, u, u, a, b))
        elif u < v:
            recs.append((2, u, v, lam[x], lam[y]))
        else:
            recs.append((2, v, u, lam[y], lam[x]))
    return tuple(sorted(recs))


def canonical_key(lg: LabelledGraph) -> bytes:
    """Least edge encoding over all vertex relabellings.

    Two labelled graphs get equal keys exactly when a label-preserving
    isomorphism relates them.  Vertex counts above 8 are refused.
    """
    n = lg.graph.n_vertices
    if n > 8:
        raise GraphError("canonical keys are computed by exhaustive relabelling; at most 8 vertices")
    best = min(_edge_records(lg, p) for p in itertools.permutations(range(n)))
    return json.dumps([n, best], separators=(",", ":")).encode()


def label_preserving_isomorphic(a: LabelledGraph, b: LabelledGraph) -> bool:
    return label_preserving_isomorphism(a, b) is not None


def label_preserving_isomorphism(a: LabelledGraph, b: LabelledGraph) -> Morphism | None:
    """A graph isomorphism mapping each dart to one with the same label, or None."""
    return _search.find_isomorphism(
        a.graph, b.graph, labels_g=a.lam, labels_h=b.lam, bound=None
    )


# -- enumeration ------------------------------------------------------------------


def _involutions(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    """All involutions on ``items`` as lists of pairs (fixed points pair with themselves)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for tail in _involutions(rest):
        yield [(first, first)] + tail
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1 :]
        for tail in _involutions(remaining):
            yield [(first, other)] + tail


def ccv_label_conditions(lg: LabelledGraph) -> bool:
    """Label conditions for extending to a simple connected cubic cover.

    Valence sum 3 at each vertex; equal labels on an edge only when both are
    1; parallel darts (same ends, distinct, including the two darts of a loop)
    have label 1; semi-edges have label 1; at most one semi-edge per vertex.
    """
    g = lg.graph
    lam = lg.lam
    for v in g.vertices:
        if lg.valence_sum(v) != 3:
            return False
        semis = 0
        ends: dict[int, int] = {}
        for x in g.out_darts[v]:
            y = g.inv[x]
            if lam[x] == lam[y] and lam[x] != 1:
                return False
            if x == y:
                semis += 1
                if lam[x] != 1:
                    return False
            ends[g.beg[y]] = ends.get(g.beg[y], 0) + 1
        if semis > 1:
            return False
        for x in g.out_darts[v]:
            if ends[g.term(x)] > 1 and lam[x] != 1:
                return False
    return True


def _candidates(n: int) -> Iterator[LabelledGraph]:
    for label_choice in itertools.product(_LABEL_SETS, repeat=n):
        beg: list[int] = []
        lam: list[int] = []
        for v, labels in enumerate(label_choice):
            for a in labels:
                beg.append(v)
                lam.append(a)
        nd = len(beg)
        for pairs in _involutions(list(range(nd))):
            inv = [0] * nd
            for a, b in pairs:
                inv[a] = b
                inv[b] = a
            yield LabelledGraph(DartGraph(n, tuple(beg), tuple(inv)), tuple(lam))


def enumerate_quotients(max_vertices: int = 3) -> list[LabelledIsoClass]:
    """All connected labelled graphs on at most ``max_vertices`` vertices that
    extend to a ccv-graph, one per label-preserving isomorphism class, sorted
    by (vertex count, canonical key)."""
    if not 1 <= max_vertices <= 3:
        raise GraphError("max_vertices must be 1, 2 or 3")
    found: dict[bytes, LabelledGraph] = {}
    for n in range(1, max_vertices + 1):
        for lg in _candidates(n):
            if not ccv_label_conditions(lg):
                continue
            if not lg.graph.is_connected():
                continue
            if not extend(lg).extendable:
                continue
            key = canonical_key(lg)
            if key not in found:
                found[key] = lg
    return [
        LabelledIsoClass(found[k], k)
        for k in sorted(found, key=lambda k: (json.loads(k)[0], k))
    ]


def constructive_extension(lg: LabelledGraph) -> CyclicVoltageGraph:
    """A ccv-graph extending ``lg``, built by the standard construction.

    The least index function is scaled by the least ``c`` making it even at
    vertices with a semi-edge or a pair of parallel links, and at least 3 at
    vertices with a loop.  Voltage is 0 on a maximal simple subgraph, half the
    index on semi-edges and 1 on every other edge.  The three-edge dipole uses
    indices 3 and voltages 0, 1, 2.
    """
    g = lg.graph
    links = [x for x in g.edges if g.inv[x] != x and g.beg[x] != g.term(x)]
    if g.n_vertices == 2 and len(links) == 3 and len(g.edges) == 3:
        d = dipole_k33()
        if lg.lam == d.lam and g == d.graph:
            return d
        return CyclicVoltageGraph.from_carriers(lg, (3, 3), {links[0]: 0, links[1]: 1, links[2]: 2})
    ext = extend(lg)
    if not ext.extendable:
        raise GraphError("labelled graph is not extendable")
    iota = ext.iota
    need_even = set()
    need_three = set()
    seen_pairs: dict[tuple[int, int], int] = {}
    for x in g.edges:
        y = g.inv[x]
        u, v = g.beg[x], g.beg[y]
        if x == y:
            need_even.add(u)
        elif u == v:
            need_three.add(u)
        else:
            key = (min(u, v), max(u, v))
            seen_pairs[key] = seen_pairs.get(key, 0) + 1
            if seen_pairs[key] > 1:
                need_even.update(key)
    c = 1
    while any((c * iota[v]) % 2 for v in need_even) or any(c * iota[v] < 3 for v in need_three):
        c += 1
    iota = tuple(c * i for i in iota)
    volts: dict[int, int] = {}
    used: set[tuple[int, int]] = set()
    for x in g.edges:
        y = g.inv[x]
        u, v = g.beg[x], g.beg[y]
        if x == y:
            volts[x] = iota[u] // 2
        elif u == v:
            volts[x] = 1
        else:
            key = (min(u, v), max(u, v))
            volts[x] = 1 if key in used else 0
            used.add(key)
    return CyclicVoltageGraph.from_carriers(lg, iota, volts)


# -- cyclic quotients of a given graph ---------------------------------------------


def _power(p: Sequence[int], k: int) -> tuple[int, ...]:
    out = tuple(range(len(p)))
    for _ in range(k):
        out = tuple(p[i] for i in out)
    return out


def _cyclic_subgroups(perms: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """One generator per distinct cyclic subgroup, in order of first appearance."""
    seen: set[frozenset] = set()
    gens = []
    for p in perms:
        p = tuple(p)
        elems = [tuple(range(len(p)))]
        cur = p
        while cur != elems[0]:
            elems.append(cur)
            cur = tuple(p[i] for i in cur)
        key = frozenset(elems)
        if key not in seen:
            seen.add(key)
            gens.append(p)
    return gens


def induced_labelling(g: DartGraph, a: Morphism) -> LabelledGraph:
    """Quotient of ``g`` by ``<a>`` labelled by dart-orbit counts at one vertex."""
    if not is_automorphism(g, a):
        raise GraphError("not an automorphism")
    q = quotient(g, [a])
    lam = []
    for orbit in q.dart_orbits:
        v = g.beg[orbit[0]]
        lam.append(sum(1 for x in orbit if g.beg[x] == v))
    return LabelledGraph(q.graph, tuple(lam))


@lru_cache(maxsize=None)
def _template_keys() -> dict[bytes, int]:
    from .families import all_templates

    return {canonical_key(t.labelled): t.index for t in all_templates()}


def template_index(lg: LabelledGraph) -> int | None:
    """Index of the template label-isomorphic to ``lg``, if any."""
    if lg.graph.n_vertices > 3:
        return None
    return _template_keys().get(canonical_key(lg))


@dataclass(frozen=True)
class CyclicQuotient:
    generator: Morphism
    labelled: LabelledGraph
    index: int | None


def cyclic_quotients(
    g: DartGraph, max_orbits: int = 3, bound: int | None = _search.DEFAULT_BOUND
) -> tuple[list[CyclicQuotient], set[int]]:
    """Quotients of ``g`` by its cyclic automorphism groups with few vertex orbits.

    Returns one record per cyclic subgroup with at most ``max_orbits`` vertex
    orbits, and the set of template indices matched.
    """
    if not g.is_simple():
        raise GraphError("cyclic quotients need a simple graph")
    auts = _search.vertex_automorphisms(g, bound=bound)
    out = []
    indices: set[int] = set()
    for p in _cyclic_subgroups(auts):
        if len(_orbit_count(p)) > max_orbits:
            continue
        mor = Morphism(tuple(p), _search.complete_darts(g, g, p))
        lg = induced_labelling(g, mor)
        idx = template_index(lg)
        out.append(CyclicQuotient(mor, lg, idx))
        if idx is not None:
            indices.add(idx)
    return out, indices


def _orbit_count(p: Sequence[int]) -> list[set[int]]:
    seen = [False] * len(p)
    orbits = []
    for a in range(len(p)):
        if seen[a]:
            continue
        orb = set()
        b = a
        while not seen[b]:
            seen[b] = True
            orb.add(b)
            b = p[b]
        orbits.append(orb)
    return orbits


def manifest(classes: Sequence[LabelledIsoClass]) -> dict:
    """JSON-ready summary: counts per vertex number, keys and matched template indices."""
    by_n: dict[int, int] = {}
    entries = []
    for i, c in enumerate(classes):
        n = c.representative.graph.n_vertices
        by_n[n] = by_n.get(n, 0) + 1
        entries.append(
            {
                "file": f"class_{i + 1:02d}.cvg",
                "vertices": n,
                "canonical_key": c.canonical_key.decode(),
                "template": template_index(c.representative),
            }
        )
    return {"count": len(classes), "by_vertices": {str(k): v for k, v in sorted(by_n.items())}, "classes": entries}
