"""Dart-based multigraphs.

A graph is a quadruple ``(V, D, beg, inv)``: vertices and darts are the dense
integer ranges ``0..n-1`` and ``0..|D|-1``, ``beg`` assigns each dart its
initial vertex and ``inv`` is an involution on darts.  Semi-edges are the
fixed points of ``inv``; loops are edges whose two darts share an initial
vertex.  Everything here treats graphs as immutable values.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

SEMI = "semi-edge"
LOOP = "loop"
LINK = "link"


class GraphError(ValueError):
    """Raised for malformed graphs or invalid arguments to graph operations."""


class SizeBoundError(GraphError):
    """Raised when an exhaustive search is requested above its size bound."""


@dataclass(frozen=True)
class DartGraph:
    n_vertices: int
    beg: tuple[int, ...]
    inv: tuple[int, ...]

    def __post_init__(self) -> None:
        beg = tuple(int(v) for v in self.beg)
        inv = tuple(int(x) for x in self.inv)
        object.__setattr__(self, "beg", beg)
        object.__setattr__(self, "inv", inv)
        if self.n_vertices < 0:
            raise GraphError("negative vertex count")
        if len(beg) != len(inv):
            raise GraphError("beg and inv must have one entry per dart")
        nd = len(inv)
        for x in range(nd):
            if not 0 <= beg[x] < self.n_vertices:
                raise GraphError(f"dart {x} begins at unknown vertex {beg[x]}")
            y = inv[x]
            if not 0 <= y < nd:
                raise GraphError(f"dart {x} has unknown inverse {y}")
            if inv[y] != x:
                raise GraphError(f"inv is not an involution at dart {x}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        n_vertices: int,
        links: Iterable[tuple[int, int]] = (),
        loops: Iterable[int] = (),
        semi_edges: Iterable[int] = (),
    ) -> DartGraph:
        """Build a graph from edge lists.

        Darts are numbered in the order links, loops, semi-edges; a link
        ``(u, v)`` gets darts ``u->v`` then ``v->u``.
        """
        beg: list[int] = []
        inv: list[int] = []
        for u, v in links:
            if u == v:
                raise GraphError("use loops= for edges with equal endpoints")
            k = len(beg)
            beg += [u, v]
            inv += [k + 1, k]
        for u in loops:
            k = len(beg)
            beg += [u, u]
            inv += [k + 1, k]
        for u in semi_edges:
            k = len(beg)
            beg.append(u)
            inv.append(k)
        return cls(n_vertices, tuple(beg), tuple(inv))

    @classmethod
    def simple(cls, n_vertices: int, edges: Iterable[tuple[int, int]]) -> DartGraph:
        """Simple graph from an edge list; edges are deduplicated and sorted."""
        norm = sorted({(min(u, v), max(u, v)) for u, v in edges})
        if any(u == v for u, v in norm):
            raise GraphError("simple graphs have no loops")
        return cls.from_edges(n_vertices, norm)

    # -- basic accessors --------------------------------------------------

    @property
    def n_darts(self) -> int:
        return len(self.beg)

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    @property
    def darts(self) -> range:
        return range(len(self.beg))

    def _check_dart(self, x: int) -> None:
        if not 0 <= x < len(self.beg):
            raise GraphError(f"unknown dart {x}")

    def term(self, x: int) -> int:
        """End vertex of dart ``x``, i.e. ``beg(inv(x))``."""
        self._check_dart(x)
        return self.beg[self.inv[x]]

    def classify_edge(self, x: int) -> str:
        self._check_dart(x)
        y = self.inv[x]
        if y == x:
            return SEMI
        if self.beg[x] == self.beg[y]:
            return LOOP
        return LINK

    @cached_property
    def out_darts(self) -> tuple[tuple[int, ...], ...]:
        """Darts emanating from each vertex, in increasing dart order."""
        out: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for x, v in enumerate(self.beg):
            out[v].append(x)
        return tuple(tuple(d) for d in out)

    def valence(self, v: int) -> int:
        return len(self.out_darts[v])

    @cached_property
    def edges(self) -> tuple[int, ...]:
        """One carrier dart per edge: the lower dart id of ``{x, inv(x)}``."""
        return tuple(x for x in self.darts if x <= self.inv[x])

    def carrier(self, x: int) -> int:
        self._check_dart(x)
        return min(x, self.inv[x])

    @cached_property
    def neighbours(self) -> tuple[tuple[int, ...], ...]:
        """Sorted distinct end vertices of darts at each vertex (may include v)."""
        return tuple(
            tuple(sorted({self.beg[self.inv[x]] for x in ds})) for ds in self.out_darts
        )

    def is_simple(self) -> bool:
        seen: set[tuple[int, int]] = set()
        for x in self.edges:
            y = self.inv[x]
            u, v = self.beg[x], self.beg[y]
            if x == y or u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_regular(self, k: int) -> bool:
        return all(len(ds) == k for ds in self.out_darts)

    @cached_property
    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(ns) for ns in self.neighbours)

    def edge_list(self) -> list[tuple[int, int]]:
        """Endpoint pairs ``(u, v)`` with ``u <= v`` per edge, sorted."""
        out = []
        for x in self.edges:
            u, v = self.beg[x], self.beg[self.inv[x]]
            out.append((min(u, v), max(u, v)))
        return sorted(out)

    # -- walks ------------------------------------------------------------

    def is_walk(self, darts: Sequence[int]) -> bool:
        for x in darts:
            if not 0 <= x < self.n_darts:
                return False
        return all(
            self.beg[self.inv[a]] == self.beg[b] for a, b in zip(darts, darts[1:])
        )

    def inverse_walk(self, darts: Sequence[int]) -> list[int]:
        return [self.inv[x] for x in reversed(darts)]

    # -- connectivity -----------------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex."""
        seen = [False] * self.n_vertices
        comps = []
        for s in self.vertices:
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.neighbours[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and len(self.components()) == 1

    def bfs_tree_path(self, tree: SpanningTree, source: int) -> list[list[int]]:
        """For each vertex, the dart path from ``source`` inside ``tree``."""
        paths: list[list[int] | None] = [None] * self.n_vertices
        paths[source] = []
        queue = deque([source])
        tree_darts = tree.darts
        while queue:
            v = queue.popleft()
            for x in self.out_darts[v]:
                if x not in tree_darts:
                    continue
                w = self.beg[self.inv[x]]
                if paths[w] is None:
                    paths[w] = paths[v] + [x]
                    queue.append(w)
        if any(p is None for p in paths):
            raise GraphError("tree does not span the graph")
        return paths  # type: ignore[return-value]

    # -- subgraphs --------------------------------------------------------

    def subgraph(self, darts: Iterable[int], vertices: Iterable[int] | None = None) -> tuple[DartGraph, list[int], list[int]]:
        """Subgraph on a set of darts closed under ``inv``.

        Returns the subgraph and the lists mapping its vertex and dart ids back
        to this graph.  Vertices default to the initial vertices of ``darts``.
        """
        dset = sorted(set(darts))
        for x in dset:
            self._check_dart(x)
            if self.inv[x] not in dset:
                raise GraphError("dart set must be closed under inv")
        vset = sorted(set(vertices) if vertices is not None else {self.beg[x] for x in dset})
        vidx = {v: i for i, v in enumerate(vset)}
        didx = {x: i for i, x in enumerate(dset)}
        try:
            sub = DartGraph(
                len(vset),
                tuple(vidx[self.beg[x]] for x in dset),
                tuple(didx[self.inv[x]] for x in dset),
            )
        except KeyError as exc:
            raise GraphError("vertex set misses an endpoint of a dart") from exc
        return sub, vset, dset


@dataclass(frozen=True)
class SpanningTree:
    """Edges of a spanning tree, stored as carrier darts."""

    graph: DartGraph
    edges: frozenset[int]
    darts: frozenset[int] = field(init=False)

    def __post_init__(self) -> None:
        g = self.graph
        object.__setattr__(
            self, "darts", frozenset(self.edges) | {g.inv[x] for x in self.edges}
        )

    def cotree_edges(self) -> list[int]:
        return [x for x in self.graph.edges if x not in self.edges]

    def fundamental_cycles(self) -> list[list[int]]:
        """One closed walk per cotree edge: the edge followed by the tree path back."""
        g = self.graph
        paths = g.bfs_tree_path(self, 0)
        cycles = []
        for x in self.cotree_edges():
            u, v = g.beg[x], g.term(x)
            cycles.append([x] + _tree_path(g, paths, v, u))
        return cycles


def _tree_path(g: DartGraph, paths: list[list[int]], a: int, b: int) -> list[int]:
    """Reduced tree walk from ``a`` to ``b`` given root paths."""
    pa, pb = paths[a], paths[b]
    k = 0
    while k < len(pa) and k < len(pb) and pa[k] == pb[k]:
        k += 1
    return g.inverse_walk(pa[k:]) + pb[k:]


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def spanning_tree(g: DartGraph, required_edges: Iterable[int] = ()) -> SpanningTree:
    """Spanning tree containing every required edge.

    Edges may be given by either of their darts.  Remaining edges are taken
    greedily scanning vertices, then their darts, in increasing id order.
    """
    if not g.is_connected():
        raise GraphError("graph is not connected")
    uf = _UnionFind(g.n_vertices)
    chosen: set[int] = set()
    for x in sorted({g.carrier(x) for x in required_edges}):
        if g.classify_edge(x) != LINK or not uf.union(g.beg[x], g.term(x)):
            raise GraphError(f"required edges contain a cycle (edge of dart {x})")
        chosen.add(x)
    for v in g.vertices:
        for x in g.out_darts[v]:
            if g.classify_edge(x) == LINK and uf.union(v, g.term(x)):
                chosen.add(g.carrier(x))
    return SpanningTree(g, frozenset(chosen))


# -- morphisms ----------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    """A graph morphism given by its vertex and dart maps."""

    vertex_map: tuple[int, ...]
    dart_map: tuple[int, ...]

    def compose(self, other: Morphism) -> Morphism:
        """``self`` after ``other``."""
        return Morphism(
            tuple(self.vertex_map[v] for v in other.vertex_map),
            tuple(self.dart_map[x] for x in other.dart_map),
        )

    def inverse(self) -> Morphism:
        vm = [0] * len(self.vertex_map)
        for a, b in enumerate(self.vertex_map):
            vm[b] = a
        dm = [0] * len(self.dart_map)
        for a, b in enumerate(self.dart_map):
            dm[b] = a
        return Morphism(tuple(vm), tuple(dm))

    def is_identity(self) -> bool:
        return all(a == b for a, b in enumerate(self.vertex_map)) and all(
            a == b for a, b in enumerate(self.dart_map)
        )

    @classmethod
    def identity(cls, g: DartGraph) -> Morphism:
        return cls(tuple(g.vertices), tuple(g.darts))


def is_morphism(g: DartGraph, h: DartGraph, phi: Morphism) -> bool:
    """Check that ``phi`` commutes with beg and inv from ``g`` to ``h``."""
    if len(phi.vertex_map) != g.n_vertices or len(phi.dart_map) != g.n_darts:
        return False
    for x in g.darts:
        y = phi.dart_map[x]
        if not 0 <= y < h.n_darts:
            return False
        if h.beg[y] != phi.vertex_map[g.beg[x]]:
            return False
        if h.inv[y] != phi.dart_map[g.inv[x]]:
            return False
    return True


def is_isomorphism(g: DartGraph, h: DartGraph, phi: Morphism) -> bool:
    return (
        g.n_vertices == h.n_vertices
        and g.n_darts == h.n_darts
        and sorted(phi.vertex_map) == list(h.vertices)
        and sorted(phi.dart_map) == list(h.darts)
        and is_morphism(g, h, phi)
    )


def is_automorphism(g: DartGraph, phi: Morphism) -> bool:
    return is_isomorphism(g, g, phi)


def vertex_map_to_morphism(g: DartGraph, h: DartGraph, vmap: Sequence[int]) -> Morphism:
    """Lift a vertex bijection between simple graphs to a morphism."""
    index = {}
    for y in h.darts:
        index[(h.beg[y], h.term(y))] = y
    dmap = []
    for x in g.darts:
        key = (vmap[g.beg[x]], vmap[g.term(x)])
        if key not in index:
            raise GraphError("vertex map does not preserve adjacency")
        dmap.append(index[key])
    return Morphism(tuple(vmap), tuple(dmap))


# -- orbits and quotients ---------------------------------------------------


@dataclass(frozen=True)
class VertexPartition:
    blocks: tuple[tuple[int, ...], ...]

    def block_of(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


def _orbits(size: int, perms: Sequence[Sequence[int]]) -> list[list[int]]:
    uf = _UnionFind(size)
    for p in perms:
        for a, b in enumerate(p):
            uf.union(a, b)
    groups: dict[int, list[int]] = {}
    for a in range(size):
        groups.setdefault(uf.find(a), []).append(a)
    return sorted(groups.values())


def _check_automorphisms(g: DartGraph, gens: Sequence[Morphism]) -> None:
    for phi in gens:
        if not is_automorphism(g, phi):
            raise GraphError("generator is not an automorphism")


def vertex_orbits(g: DartGraph, gens: Sequence[Morphism]) -> VertexPartition:
    _check_automorphisms(g, gens)
    blocks = _orbits(g.n_vertices, [p.vertex_map for p in gens])
    return VertexPartition(tuple(tuple(b) for b in blocks))


def dart_orbits(g: DartGraph, gens: Sequence[Morphism]) -> list[list[int]]:
    _check_automorphisms(g, gens)
    return _orbits(g.n_darts, [p.dart_map for p in gens])


@dataclass(frozen=True)
class Quotient:
    graph: DartGraph
    vertex_projection: tuple[int, ...]
    dart_projection: tuple[int, ...]
    vertex_orbits: tuple[tuple[int, ...], ...]
    dart_orbits: tuple[tuple[int, ...], ...]

    def as_morphism(self) -> Morphism:
        return Morphism(self.vertex_projection, self.dart_projection)


def quotient(g: DartGraph, gens: Sequence[Morphism]) -> Quotient:
    """Quotient of ``g`` by the group generated by ``gens``.

    Orbits are numbered by their least member, so the quotient by the trivial
    group reproduces ``g`` exactly.
    """
    _check_automorphisms(g, gens)
    vorb = _orbits(g.n_vertices, [p.vertex_map for p in gens])
    dorb = _orbits(g.n_darts, [p.dart_map for p in gens])
    vproj = [0] * g.n_vertices
    for i, block in enumerate(vorb):
        for v in block:
            vproj[v] = i
    dproj = [0] * g.n_darts
    for i, block in enumerate(dorb):
        for x in block:
            dproj[x] = i
    beg = tuple(vproj[g.beg[block[0]]] for block in dorb)
    inv = tuple(dproj[g.inv[block[0]]] for block in dorb)
    return Quotient(
        DartGraph(len(vorb), beg, inv),
        tuple(vproj),
        tuple(dproj),
        tuple(tuple(b) for b in vorb),
        tuple(tuple(b) for b in dorb),
    )
