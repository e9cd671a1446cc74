"""Dart-labelled graphs, cyclic generalised voltage graphs and their covers.

A voltage graph is a connected dart graph with a positive label ``lam`` per
dart, an index ``iota`` per vertex and an integer voltage ``zeta`` per dart
subject to

    lam(x) * iota(beg x) == lam(inv x) * iota(term x)
    zeta(inv x) == -zeta(x)   (mod lam(x) * iota(beg x))

Its cover has vertices ``v_i`` for ``i`` mod ``iota(v)`` and darts ``x_i`` for
``i`` mod ``lam(x) * iota(beg x)``, with ``beg(x_i) = (beg x)_i`` and
``inv(x_i) = (inv x)_{i + zeta(x)}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Mapping, Sequence

from .dartgraph import (
    LINK,
    LOOP,
    SEMI,
    DartGraph,
    GraphError,
    Morphism,
    SpanningTree,
    spanning_tree,
)


class VoltageError(GraphError):
    """Raised when labels, indices or voltages violate the defining relations."""


def _lcm(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def _gcd(values) -> int:
    return reduce(math.gcd, values, 0)


@dataclass(frozen=True)
class LabelledGraph:
    graph: DartGraph
    lam: tuple[int, ...]

    def __post_init__(self) -> None:
        lam = tuple(int(a) for a in self.lam)
        object.__setattr__(self, "lam", lam)
        if len(lam) != self.graph.n_darts:
            raise VoltageError("one label per dart is required")
        if any(a < 1 for a in lam):
            raise VoltageError("labels must be positive integers")

    def edge_type(self, x: int) -> tuple[int, int]:
        """The pair ``[lam(x), lam(inv x)]``."""
        return self.lam[x], self.lam[self.graph.inv[x]]

    def valence_sum(self, v: int) -> int:
        return sum(self.lam[x] for x in self.graph.out_darts[v])


# -- walk ratios and extendability -------------------------------------------


def walk_ratio(lg: LabelledGraph, walk: Sequence[int]) -> Fraction:
    """Product of ``lam(x) / lam(inv x)`` along a walk, in lowest terms."""
    g = lg.graph
    if not g.is_walk(walk):
        raise GraphError("not a walk")
    r = Fraction(1)
    for x in walk:
        r *= Fraction(lg.lam[x], lg.lam[g.inv[x]])
    return r


@dataclass(frozen=True)
class Extension:
    """Outcome of solving the ratio equations on a labelled graph."""

    extendable: bool
    iota: tuple[int, ...] | None
    witness: tuple[int, ...] | None = None


def extend(lg: LabelledGraph) -> Extension:
    """Least index function making ``lg`` extendable, or a violating closed walk.

    Indices are propagated along a spanning tree, then every fundamental
    cycle (and every loop) is checked to have walk ratio 1.
    """
    g = lg.graph
    if not g.is_connected():
        raise GraphError("graph is not connected")
    tree = spanning_tree(g)
    paths = g.bfs_tree_path(tree, 0)
    rel = [walk_ratio(lg, p) for p in paths]
    for cyc in tree.fundamental_cycles():
        if walk_ratio(lg, cyc) != 1:
            return Extension(False, None, tuple(cyc))
    for x in g.darts:
        if g.classify_edge(x) == LOOP and lg.lam[x] != lg.lam[g.inv[x]]:
            return Extension(False, None, (x,))
    scale = _lcm(r.denominator for r in rel)
    ints = [int(r * scale) for r in rel]
    d = _gcd(ints)
    return Extension(True, tuple(i // d for i in ints))


def is_extendable(lg: LabelledGraph) -> bool:
    return extend(lg).extendable


def scaled_iota(lg: LabelledGraph, v0: int, m: int) -> tuple[int, ...]:
    """The index function with ``iota(v0) == m``; ``m`` must be a multiple of the least one."""
    ext = extend(lg)
    if not ext.extendable:
        raise VoltageError("labelled graph is not extendable")
    base = ext.iota[v0]
    if m < 1 or m % base:
        raise VoltageError(f"iota({v0}) must be a positive multiple of {base}, got {m}")
    c = m // base
    return tuple(c * i for i in ext.iota)


# -- voltage graphs ------------------------------------------------------------


@dataclass(frozen=True)
class CyclicVoltageGraph:
    labelled: LabelledGraph
    iota: tuple[int, ...]
    zeta: tuple[int, ...]

    def __post_init__(self) -> None:
        g = self.labelled.graph
        iota = tuple(int(i) for i in self.iota)
        if len(iota) != g.n_vertices or any(i < 1 for i in iota):
            raise VoltageError("one positive index per vertex is required")
        if len(self.zeta) != g.n_darts:
            raise VoltageError("one voltage per dart is required")
        lam = self.labelled.lam
        zeta = []
        for x in g.darts:
            y = g.inv[x]
            mod = lam[x] * iota[g.beg[x]]
            if mod != lam[y] * iota[g.beg[y]]:
                raise VoltageError(f"ratio condition fails at dart {x}")
            if (int(self.zeta[x]) + int(self.zeta[y])) % mod:
                raise VoltageError(f"inverse voltage condition fails at dart {x}")
            zeta.append(int(self.zeta[x]) % mod)
        object.__setattr__(self, "iota", iota)
        object.__setattr__(self, "zeta", tuple(zeta))

    @classmethod
    def from_carriers(
        cls,
        labelled: LabelledGraph,
        iota: Sequence[int],
        voltages: Mapping[int, int] | None = None,
    ) -> CyclicVoltageGraph:
        """Build from voltages on carrier darts; inverse darts get the negated value.

        Darts missing from ``voltages`` get 0, semi-edges included (a semi-edge
        voltage must satisfy ``2 * zeta == 0`` modulo its fibre size).
        """
        g = labelled.graph
        voltages = dict(voltages or {})
        zeta = [0] * g.n_darts
        for x in g.darts:
            if x > g.inv[x]:
                continue
            z = int(voltages.get(x, 0))
            if g.inv[x] in voltages and x not in voltages:
                z = -int(voltages[g.inv[x]])
            y = g.inv[x]
            mod = labelled.lam[y] * iota[g.beg[y]]
            zeta[x] = z % (labelled.lam[x] * iota[g.beg[x]])
            zeta[y] = (-z) % mod
        return cls(labelled, tuple(iota), tuple(zeta))

    @property
    def graph(self) -> DartGraph:
        return self.labelled.graph

    @property
    def lam(self) -> tuple[int, ...]:
        return self.labelled.lam

    def fibre_size(self, x: int) -> int:
        return self.lam[x] * self.iota[self.graph.beg[x]]

    @cached_property
    def order(self) -> int:
        """Number of cover vertices."""
        return sum(self.iota)

    def with_zeta(self, zeta: Sequence[int]) -> CyclicVoltageGraph:
        return CyclicVoltageGraph(self.labelled, self.iota, tuple(zeta))


def dipole_k33() -> CyclicVoltageGraph:
    """Three parallel [1,1]-edges, both indices 3, voltages 0, 1, 2 on the carriers.

    This is the exceptional dipole whose cover is K_{3,3}.
    """
    g = DartGraph.from_edges(2, links=[(0, 1)] * 3)
    lg = LabelledGraph(g, (1,) * 6)
    return CyclicVoltageGraph.from_carriers(lg, (3, 3), {0: 0, 2: 1, 4: 2})


# -- covers -----------------------------------------------------------------------


@dataclass(frozen=True)
class Cover:
    graph: DartGraph
    fibre_of_vertex: tuple[tuple[int, int], ...]
    fibre_of_dart: tuple[tuple[int, int], ...]
    n: int
    base: CyclicVoltageGraph
    vertex_offset: tuple[int, ...]
    dart_offset: tuple[int, ...]

    def vertex_id(self, v: int, i: int) -> int:
        return self.vertex_offset[v] + i % self.base.iota[v]

    def dart_id(self, x: int, i: int) -> int:
        return self.dart_offset[x] + i % self.base.fibre_size(x)

    def fibres(self) -> list[list[int]]:
        return [
            list(range(self.vertex_offset[v], self.vertex_offset[v] + k))
            for v, k in enumerate(self.base.iota)
        ]


def _offsets(sizes: Sequence[int]) -> tuple[int, ...]:
    out = []
    t = 0
    for s in sizes:
        out.append(t)
        t += s
    return tuple(out)


def expand(cvg: CyclicVoltageGraph) -> Cover:
    """The cyclic generalised cover of ``cvg``."""
    g = cvg.graph
    voff = _offsets(cvg.iota)
    sizes = [cvg.fibre_size(x) for x in g.darts]
    doff = _offsets(sizes)
    beg = []
    inv = []
    fv = [(v, i) for v in g.vertices for i in range(cvg.iota[v])]
    fd = []
    for x in g.darts:
        u = g.beg[x]
        y = g.inv[x]
        iu = cvg.iota[u]
        size = sizes[x]
        z = cvg.zeta[x]
        for i in range(size):
            beg.append(voff[u] + i % iu)
            inv.append(doff[y] + (i + z) % size)
            fd.append((x, i))
    cover_graph = DartGraph(sum(cvg.iota), tuple(beg), tuple(inv))
    return Cover(cover_graph, tuple(fv), tuple(fd), faithful_n(cvg), cvg, voff, doff)


def adjacent_in_cover(cvg: CyclicVoltageGraph, a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Whether ``u_i`` and ``v_j`` are adjacent, decided on the quotient alone."""
    g = cvg.graph
    (u, i), (v, j) = a, b
    for w, k in (a, b):
        if not 0 <= w < g.n_vertices:
            raise GraphError(f"unknown vertex {w}")
        if not 0 <= k < cvg.iota[w]:
            raise GraphError(f"index {k} outside the fibre of vertex {w}")
    d = math.gcd(cvg.iota[u], cvg.iota[v])
    for x in g.out_darts[u]:
        if g.term(x) == v and (j - i - cvg.zeta[x]) % d == 0:
            return True
    return False


def faithful_n(cvg: CyclicVoltageGraph) -> int:
    """Order of the cyclic group acting on the cover with the fibres as orbits."""
    g = cvg.graph
    return _lcm([*cvg.iota, *(cvg.fibre_size(x) for x in g.darts)])


def zn_weights(cvg: CyclicVoltageGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Subgroup generators in Z_n: ``iota(v)`` per vertex and ``iota(beg x) * lam(x)`` per dart."""
    return cvg.iota, tuple(cvg.fibre_size(x) for x in cvg.graph.darts)


def fibre_rotation(cover: Cover, a: int) -> Morphism:
    """The automorphism ``x_i -> x_{i+a}`` of the cover."""
    cvg = cover.base
    vmap = tuple(cover.vertex_id(v, i + a) for v, i in cover.fibre_of_vertex)
    dmap = tuple(cover.dart_id(x, i + a) for x, i in cover.fibre_of_dart)
    return Morphism(vmap, dmap)


# -- voltage normalisation ------------------------------------------------------


def reduce_voltages(cvg: CyclicVoltageGraph) -> CyclicVoltageGraph:
    """Reduce carrier voltages modulo ``gcd(iota(beg x), iota(term x))``.

    Inverse darts receive the negated residue so the inverse relation keeps
    holding.  On [1,1]-edges this reduces both darts and leaves the cover
    unchanged dart for dart.  On other edges the cover keeps its vertex set and
    every adjacency; only the pairing of darts inside an edge fibre moves.
    Semi-edges with label above 1 are left as they are, since their voltage
    class is not determined by its residue modulo the index.
    """
    g = cvg.graph
    zeta = list(cvg.zeta)
    for x in g.edges:
        y = g.inv[x]
        if x == y and cvg.lam[x] != 1:
            continue
        d = math.gcd(cvg.iota[g.beg[x]], cvg.iota[g.beg[y]])
        z = zeta[x] % d
        zeta[x] = z
        zeta[y] = (-z) % cvg.fibre_size(y)
    return cvg.with_zeta(zeta)


def reduction_witness(cvg: CyclicVoltageGraph, reduced: CyclicVoltageGraph) -> Morphism:
    """Isomorphism between the two covers that is the identity on vertices.

    On each edge fibre, dart ``x_i`` is sent to ``x_{i+t}`` where ``t`` is the
    multiple of ``iota(beg x)`` absorbing the voltage change.
    """
    g = cvg.graph
    ca, cb = expand(cvg), expand(reduced)
    dmap = [0] * ca.graph.n_darts
    for x in g.edges:
        y = g.inv[x]
        size = cvg.fibre_size(x)
        iu, iv = cvg.iota[g.beg[x]], cvg.iota[g.beg[y]]
        delta = reduced.zeta[x] - cvg.zeta[x]
        t = _shift(iu, iv, delta, size)
        for i in range(size):
            dmap[ca.dart_id(x, i)] = cb.dart_id(x, i + t)
            j = (i + cvg.zeta[x]) % size
            dmap[ca.dart_id(y, j)] = cb.dart_id(y, i + t + reduced.zeta[x])
    return Morphism(tuple(range(ca.graph.n_vertices)), tuple(dmap))


def _shift(iu: int, iv: int, delta: int, size: int) -> int:
    """Least ``t`` mod ``size`` with ``t = 0 (mod iu)`` and ``t + delta = 0 (mod iv)``."""
    for t in range(0, size, iu):
        if (t + delta) % iv == 0:
            return t
    raise VoltageError("voltage change is not absorbed by the fibre")


def is_t_normalised(cvg: CyclicVoltageGraph, tree: SpanningTree) -> bool:
    return all(cvg.zeta[x] == 0 for x in tree.darts)


def tree_potential(cvg: CyclicVoltageGraph, tree: SpanningTree) -> list[int]:
    """Integer shift per vertex: 0 at vertex 0, increased by the voltage along each tree dart."""
    g = cvg.graph
    if tree.graph != g:
        raise GraphError("tree belongs to a different graph")
    paths = g.bfs_tree_path(tree, 0)
    return [sum(cvg.zeta[x] for x in p) for p in paths]


def t_normalise(cvg: CyclicVoltageGraph, tree: SpanningTree) -> CyclicVoltageGraph:
    """Equivalent voltages vanishing on every dart of ``tree``."""
    p = tree_potential(cvg, tree)
    g = cvg.graph
    zeta = [cvg.zeta[x] + p[g.beg[x]] - p[g.term(x)] for x in g.darts]
    return cvg.with_zeta(zeta)


def t_normalise_witness(cvg: CyclicVoltageGraph, tree: SpanningTree) -> Morphism:
    """Isomorphism ``v_i -> v_{i-p(v)}``, ``x_i -> x_{i-p(beg x)}`` onto the normalised cover."""
    p = tree_potential(cvg, tree)
    g = cvg.graph
    ca = expand(cvg)
    cb = expand(t_normalise(cvg, tree))
    vmap = tuple(cb.vertex_id(v, i - p[v]) for v, i in ca.fibre_of_vertex)
    dmap = tuple(cb.dart_id(x, i - p[g.beg[x]]) for x, i in ca.fibre_of_dart)
    return Morphism(vmap, dmap)


def scale_voltages(cvg: CyclicVoltageGraph, a: int) -> CyclicVoltageGraph:
    """Voltages multiplied by a unit ``a`` of Z_n."""
    _check_unit(cvg, a)
    return cvg.with_zeta([z * a for z in cvg.zeta])


def scale_witness(cvg: CyclicVoltageGraph, a: int) -> Morphism:
    """Isomorphism ``x_i -> x_{a i}`` onto the cover with scaled voltages."""
    _check_unit(cvg, a)
    ca = expand(cvg)
    cb = expand(scale_voltages(cvg, a))
    vmap = tuple(cb.vertex_id(v, a * i) for v, i in ca.fibre_of_vertex)
    dmap = tuple(cb.dart_id(x, a * i) for x, i in ca.fibre_of_dart)
    return Morphism(vmap, dmap)


def _check_unit(cvg: CyclicVoltageGraph, a: int) -> None:
    n = _lcm([faithful_n(cvg), *cvg.iota])
    if math.gcd(a, n) != 1:
        raise VoltageError(f"{a} is not a unit modulo {n}")


def lift_automorphism(cvg: CyclicVoltageGraph, phi: Morphism, a: int) -> Morphism:
    """Lift a quotient automorphism to the cover as ``x_i -> (phi x)_{a i}``.

    ``phi`` must preserve labels and indices and satisfy
    ``zeta(phi x) == a * zeta(x)`` modulo the fibre size, with ``a`` a unit.
    """
    from .dartgraph import is_automorphism

    g = cvg.graph
    if not is_automorphism(g, phi):
        raise VoltageError("not an automorphism of the quotient")
    _check_unit(cvg, a)
    for v in g.vertices:
        if cvg.iota[phi.vertex_map[v]] != cvg.iota[v]:
            raise VoltageError("automorphism does not preserve the index function")
    for x in g.darts:
        y = phi.dart_map[x]
        if cvg.lam[y] != cvg.lam[x]:
            raise VoltageError("automorphism does not preserve labels")
        if (cvg.zeta[y] - a * cvg.zeta[x]) % cvg.fibre_size(x):
            raise VoltageError("automorphism is not compatible with the voltages")
    cov = expand(cvg)
    vmap = tuple(cov.vertex_id(phi.vertex_map[v], a * i) for v, i in cov.fibre_of_vertex)
    dmap = tuple(cov.dart_id(phi.dart_map[x], a * i) for x, i in cov.fibre_of_dart)
    return Morphism(vmap, dmap)


# -- criteria on the quotient ------------------------------------------------------


def is_connected_cover(cvg: CyclicVoltageGraph, tree: SpanningTree) -> bool:
    """Connectivity of the cover from a voltage assignment vanishing on ``tree``."""
    if not is_t_normalised(cvg, tree):
        raise VoltageError("voltages are not normalised on the given tree")
    if not cvg.graph.is_connected():
        return False
    return _gcd([*cvg.zeta, *cvg.iota]) == 1


def connected_cover(cvg: CyclicVoltageGraph) -> bool:
    """Connectivity test that normalises on a default spanning tree first."""
    if not cvg.graph.is_connected():
        return False
    tree = spanning_tree(cvg.graph)
    return is_connected_cover(t_normalise(cvg, tree), tree)


def is_simple_cover(cvg: CyclicVoltageGraph) -> bool:
    """Simplicity of the cover decided on the quotient.

    Requires coprime labels on each edge, distinct voltages modulo the index
    gcd on any two distinct darts with the same ends (the two darts of a loop
    included), and no semi-edge voltage divisible by its index.
    """
    g = cvg.graph
    lam = cvg.lam
    for x in g.darts:
        if math.gcd(lam[x], lam[g.inv[x]]) != 1:
            return False
    for u in g.vertices:
        by_end: dict[int, list[int]] = {}
        for x in g.out_darts[u]:
            by_end.setdefault(g.term(x), []).append(x)
        for v, ds in by_end.items():
            d = math.gcd(cvg.iota[u], cvg.iota[v])
            seen = set()
            for x in ds:
                r = cvg.zeta[x] % d
                if r in seen:
                    return False
                seen.add(r)
    for x in g.darts:
        if g.inv[x] == x and cvg.zeta[x] % cvg.iota[g.beg[x]] == 0:
            return False
    return True


def valence_law(cvg: CyclicVoltageGraph, v: int) -> int:
    """Valence of every cover vertex above ``v``."""
    return cvg.labelled.valence_sum(v)


def is_cubic_cover(cvg: CyclicVoltageGraph) -> bool:
    return all(valence_law(cvg, v) == 3 for v in cvg.graph.vertices)


def is_ccv(cvg: CyclicVoltageGraph) -> bool:
    """Cover is simple, connected and cubic."""
    return is_cubic_cover(cvg) and is_simple_cover(cvg) and connected_cover(cvg)


__all__ = [
    "LINK",
    "LOOP",
    "SEMI",
    "CyclicVoltageGraph",
    "Cover",
    "Extension",
    "LabelledGraph",
    "VoltageError",
    "adjacent_in_cover",
    "connected_cover",
    "dipole_k33",
    "expand",
    "extend",
    "faithful_n",
    "fibre_rotation",
    "is_ccv",
    "is_connected_cover",
    "is_cubic_cover",
    "is_extendable",
    "is_simple_cover",
    "is_t_normalised",
    "lift_automorphism",
    "reduce_voltages",
    "reduction_witness",
    "scale_voltages",
    "scale_witness",
    "scaled_iota",
    "t_normalise",
    "t_normalise_witness",
    "tree_potential",
    "valence_law",
    "walk_ratio",
    "zn_weights",
]
