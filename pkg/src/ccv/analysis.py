"""Cycle invariants, transitivity and the vertex-transitivity census of the 25 families."""

from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import _search
from .dartgraph import DartGraph, GraphError, SizeBoundError
from .families import (
    FamilyParams,
    make_family,
    parameter_points,
    quotient_template,
)
from .voltage import CyclicVoltageGraph, LabelledGraph, expand, fibre_rotation, is_ccv

MAX_CYCLE_LENGTH = 12
DEFAULT_CENSUS_ORDER = 48
CENSUS_BOUND = 64


# -- girth and cycle counts ---------------------------------------------------


def girth(g: DartGraph) -> int:
    """Length of a shortest cycle; semi-edges and loops are cycles of length 1."""
    for x in g.darts:
        if g.inv[x] == x or g.beg[x] == g.term(x):
            return 1
    seen_pairs = set()
    for x in g.edges:
        key = (min(g.beg[x], g.term(x)), max(g.beg[x], g.term(x)))
        if key in seen_pairs:
            return 2
        seen_pairs.add(key)
    nbrs = g.neighbours
    best = math.inf
    for s in g.vertices:
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            u = q.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in nbrs[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    if best is math.inf:
        raise GraphError("graph is a forest and has no cycles")
    return int(best)


def _edge_ends(g: DartGraph, e) -> tuple[int, int]:
    if isinstance(e, int):
        return g.beg[e], g.term(e)
    u, v = e
    if v not in g.adjacency_sets[u]:
        raise GraphError(f"{u} and {v} are not adjacent")
    return u, v


def _distances_to(g: DartGraph, target: int) -> list[int]:
    dist = [-1] * g.n_vertices
    dist[target] = 0
    q = deque([target])
    while q:
        u = q.popleft()
        for w in g.neighbours[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def edge_cycle_count(g: DartGraph, e, c: int, max_length: int = MAX_CYCLE_LENGTH) -> int:
    """Number of c-cycles through the edge ``e`` (a dart id or a vertex pair).

    Counts paths ``v = p0, ..., p(c-1) = u`` of distinct vertices; each cycle
    through the edge ``uv`` gives exactly one such path.
    """
    if not g.is_simple():
        raise GraphError("cycle counts are defined here for simple graphs")
    if c > max_length:
        raise SizeBoundError(f"cycle length {c} exceeds the bound {max_length}")
    u, v = _edge_ends(g, e)
    if c < 3:
        return 0
    dist = _distances_to(g, u)
    nbrs = g.neighbours
    on_path = {v}
    count = 0

    def walk(a: int, left: int) -> None:
        nonlocal count
        # ``left`` more steps must end exactly at u
        if left == 1:
            if u in g.adjacency_sets[a]:
                count += 1
            return
        for w in nbrs[a]:
            if w == u or w in on_path:
                continue
            if dist[w] < 0 or dist[w] > left - 1:
                continue
            on_path.add(w)
            walk(w, left - 1)
            on_path.discard(w)

    walk(v, c - 1)
    return count


def c_signature(g: DartGraph, v: int, c: int) -> tuple[int, int, int]:
    """Sorted triple of c-cycle counts over the three edges at ``v``."""
    if g.valence(v) != 3:
        raise GraphError(f"vertex {v} has valence {g.valence(v)}, not 3")
    counts = sorted(edge_cycle_count(g, x, c) for x in g.out_darts[v])
    return tuple(counts)  # type: ignore[return-value]


def signatures(g: DartGraph, c: int) -> dict[int, tuple[int, int, int]]:
    return {v: c_signature(g, v, c) for v in g.vertices}


def is_cycle_regular(g: DartGraph, c: int) -> bool:
    return len(set(signatures(g, c).values())) == 1


# -- symmetry -------------------------------------------------------------------


def is_vertex_transitive(g: DartGraph, *, seed_generators=(), bound: int | None = CENSUS_BOUND) -> bool:
    if g.n_vertices == 0:
        return True
    orbit = _search.vertex_orbit(g, 0, seed_generators=seed_generators, bound=bound)
    return len(orbit) == g.n_vertices


def is_arc_transitive(g: DartGraph, bound: int | None = CENSUS_BOUND) -> bool:
    return _search.dart_orbit_count(g, bound=bound) == 1


def aut_order(g: DartGraph, bound: int | None = CENSUS_BOUND) -> int:
    return _search.automorphism_order(g, bound=bound)


@dataclass(frozen=True)
class SignatureReport:
    girth: int
    c: int
    signatures: dict[int, tuple[int, int, int]]
    cycle_regular: bool
    vertex_transitive: bool
    arc_transitive: bool
    aut_order: int

    def to_json(self) -> dict:
        return {
            "girth": self.girth,
            "c": self.c,
            "signatures": {str(v): list(t) for v, t in sorted(self.signatures.items())},
            "cycle_regular": self.cycle_regular,
            "vertex_transitive": self.vertex_transitive,
            "arc_transitive": self.arc_transitive,
            "aut_order": self.aut_order,
        }


def signature_report(g: DartGraph, c: int | None = None, bound: int | None = CENSUS_BOUND) -> SignatureReport:
    """Full invariant report; ``c`` defaults to the girth."""
    if not g.is_simple() or not g.is_regular(3):
        raise GraphError("signature reports need a simple cubic graph")
    gi = girth(g)
    cc = gi if c is None else c
    sig = signatures(g, cc)
    return SignatureReport(
        girth=gi,
        c=cc,
        signatures=sig,
        cycle_regular=len(set(sig.values())) == 1,
        vertex_transitive=is_vertex_transitive(g, bound=bound),
        arc_transitive=is_arc_transitive(g, bound=bound),
        aut_order=aut_order(g, bound=bound),
    )


# -- small subgraph shapes and their preimages ----------------------------------

S_SHAPES = ("S1", "S2", "S3", "S4")
EXPECTED_COMPONENT = {"S1": "3-cycle", "S2": "4-cycle", "S3": "K3,2", "S4": "K3,2"}


@dataclass(frozen=True)
class SShape:
    kind: str
    darts: frozenset[int]


def _links(lg: LabelledGraph):
    g = lg.graph
    for x in g.darts:
        y = g.inv[x]
        if x != y and g.beg[x] != g.beg[y]:
            yield x, y


def find_s_shapes(lg: LabelledGraph) -> list[SShape]:
    """Every occurrence of the four small shapes in a labelled graph.

    S1: a [1,2]-edge whose label-1 end carries a semi-edge.  S2 and S3: two
    links from distinct vertices into a common vertex with label 2 (resp. 3)
    on the far darts and 1 at the common vertex.  S4: a [2,3]-edge.
    """
    g = lg.graph
    lam = lg.lam
    found: list[SShape] = []
    for x, y in _links(lg):
        u = g.beg[x]
        if lam[x] == 1 and lam[y] == 2:
            for s in g.out_darts[u]:
                if g.inv[s] == s:
                    found.append(SShape("S1", frozenset({x, y, s})))
        if lam[x] == 2 and lam[y] == 3:
            found.append(SShape("S4", frozenset({x, y})))
    for kind, big in (("S2", 2), ("S3", 3)):
        into: dict[int, list[int]] = {}
        for x, y in _links(lg):
            if lam[x] == big and lam[y] == 1:
                into.setdefault(g.beg[y], []).append(x)
        for w, xs in sorted(into.items()):
            for i, a in enumerate(xs):
                for b in xs[i + 1 :]:
                    if g.beg[a] != g.beg[b]:
                        found.append(
                            SShape(kind, frozenset({a, g.inv[a], b, g.inv[b]}))
                        )
    return found


def shape_kind(lg: LabelledGraph, darts: Iterable[int]) -> str:
    """Which S shape the closed dart set ``darts`` forms; raises when none."""
    ds = frozenset(darts)
    g = lg.graph
    if any(g.inv[x] not in ds for x in ds):
        raise GraphError("dart set is not closed under inversion")
    for sh in find_s_shapes(lg):
        if sh.darts == ds:
            return sh.kind
    raise GraphError("darts do not form one of the shapes S1..S4")


def _classify_component(adj: dict[int, set[int]]) -> str:
    n = len(adj)
    m = sum(len(s) for s in adj.values()) // 2
    degs = sorted(len(s) for s in adj.values())
    if n == 3 and m == 3:
        return "3-cycle"
    if n == 4 and m == 4 and degs == [2, 2, 2, 2]:
        return "4-cycle"
    if n == 5 and m == 6 and degs == [2, 2, 2, 3, 3]:
        big = [v for v, s in adj.items() if len(s) == 3]
        if all(adj[b] == set(adj) - set(big) for b in big):
            return "K3,2"
    return f"other({n} vertices, {m} edges)"


@dataclass(frozen=True)
class PreimageReport:
    kind: str
    components: tuple[str, ...]

    @property
    def expected(self) -> str:
        return EXPECTED_COMPONENT[self.kind]

    @property
    def ok(self) -> bool:
        return bool(self.components) and all(c == self.expected for c in self.components)


def preimage_structure(cvg: CyclicVoltageGraph, darts: Iterable[int]) -> PreimageReport:
    """Classify the connected components of the preimage of an S shape."""
    ds = frozenset(darts)
    kind = shape_kind(cvg.labelled, ds)
    cover = expand(cvg)
    cg = cover.graph
    adj: dict[int, set[int]] = {}
    for d, (x, _) in enumerate(cover.fibre_of_dart):
        if x not in ds:
            continue
        a, b = cg.beg[d], cg.term(d)
        adj.setdefault(a, set())
        adj.setdefault(b, set())
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    comps = []
    seen: set[int] = set()
    for s in sorted(adj):
        if s in seen:
            continue
        part = {s}
        stack = [s]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b not in part:
                    part.add(b)
                    stack.append(b)
        seen |= part
        comps.append(_classify_component({v: adj[v] for v in part}))
    return PreimageReport(kind, tuple(comps))


# -- the classification clauses -------------------------------------------------


def vt_clause(p: FamilyParams) -> str | None:
    """Clause of the vertex-transitive classification the parameters satisfy literally.

    Returns ``"1"`` .. ``"5"``, ``"TC"`` for the Tutte-Coxeter point, or None.
    Residues are taken mod m.
    """
    i, m = p.index, p.m
    r = p.r % m if p.r is not None else None
    s = p.s % m if p.s is not None else None
    if i == 1 and m % 2 == 0 and m >= 4 and r in (1, 2) and math.gcd(m // 2, r) == 1:
        return "1"
    if i == 2 and s == 1 % m and m >= 3:
        if (r * r) % m in (1 % m, (m - 1) % m) or (m == 10 and r == 2):
            return "2"
    if i == 4 and m >= 3 and r != s and math.gcd(m, r, s) == 1:
        return "3"
    if i == 22 and r == 2 % m and s == 1 % m and m >= 4 and m % 2 == 0 and (m // 2) % 2 == 1:
        return "4"
    if i == 23 and s == 1 % m and m % 2 == 0:
        h = m // 2
        if h % 4 == 1 and r == ((h + 3) // 2) % m:
            return "5"
        if h % 4 == 3 and r == ((3 * m // 2 + 3) // 2) % m:
            return "5"
        if m == 4 and r == 0:
            return "5"
    if i == 25 and (m, r, s) == (10, 1, 3):
        return "TC"
    return None


def _clause_points(max_order: int) -> list[FamilyParams]:
    """Parameter points listed by the classification with cover order <= max_order."""
    pts: list[FamilyParams] = []

    def fits(index: int, m: int) -> bool:
        t = quotient_template(index)
        base = t.min_iota[t.distinguished_vertex]
        return m % base == 0 and t.order(m) <= max_order

    m = 4
    while fits(1, m):
        for r in (1, 2):
            p = FamilyParams(1, m, r)
            if vt_clause(p):
                pts.append(p)
        m += 2
    m = 3
    while fits(2, m):
        for r in range(1, m):
            p = FamilyParams(2, m, r, 1)
            if vt_clause(p):
                pts.append(p)
        m += 1
    m = 3
    while fits(4, m):
        for r in range(0, m):
            for s in range(r + 1, m):
                p = FamilyParams(4, m, r, s)
                if vt_clause(p):
                    pts.append(p)
        m += 1
    m = 6
    while fits(22, m):
        p = FamilyParams(22, m, 2, 1)
        if vt_clause(p):
            pts.append(p)
        m += 2
    m = 2
    while fits(23, m):
        for r in range(m):
            p = FamilyParams(23, m, r, 1)
            if vt_clause(p):
                pts.append(p)
        m += 2
    if fits(25, 10):
        pts.append(FamilyParams(25, 10, 1, 3))
    return pts


def _graph_invariant(g: DartGraph) -> tuple:
    """Cheap isomorphism invariant used to prefilter comparisons."""
    dist_profile = []
    for v in g.vertices:
        d = _distances_to(g, v)
        dist_profile.append(tuple(sorted(d)))
    return (g.n_vertices, g.n_darts, girth(g) if g.n_darts else 0, tuple(sorted(dist_profile)))


@dataclass(frozen=True)
class ClauseGraph:
    params: FamilyParams
    clause: str
    graph: DartGraph
    invariant: tuple


@lru_cache(maxsize=None)
def clause_graphs(max_order: int) -> tuple[ClauseGraph, ...]:
    """Covers named by the classification up to ``max_order`` vertices.

    Each is instantiated directly from its parameters, kept only when it is a
    simple connected cover, and checked to be vertex-transitive.
    """
    out = []
    for p in _clause_points(max_order):
        cvg = make_family(p, check=False)
        if not is_ccv(cvg):
            continue
        cover = expand(cvg)
        g = cover.graph
        seed = [fibre_rotation(cover, 1).vertex_map]
        if not is_vertex_transitive(g, seed_generators=seed):
            raise GraphError(f"classification graph {p.label()} is not vertex-transitive")
        out.append(ClauseGraph(p, vt_clause(p), g, _graph_invariant(g)))
    return tuple(out)


def clause_membership(p: FamilyParams, g: DartGraph, max_order: int) -> str | None:
    """Literal clause, or ``"<clause>~<params>"`` when ``g`` is isomorphic to a listed graph."""
    lit = vt_clause(p)
    if lit is not None:
        return lit
    inv = None
    for cg in clause_graphs(max_order):
        if cg.graph.n_vertices != g.n_vertices:
            continue
        if inv is None:
            inv = _graph_invariant(g)
        if cg.invariant != inv:
            continue
        if _search.find_isomorphism(g, cg.graph, bound=CENSUS_BOUND) is not None:
            return f"{cg.clause}~{cg.params.label()}"
    return None


# -- census -----------------------------------------------------------------------


@dataclass(frozen=True)
class CensusRecord:
    params: FamilyParams
    order: int
    vertex_transitive: bool
    clause: str | None
    aut_order: int
    girth: int
    invariant: tuple = field(repr=False, compare=False, default=())

    @property
    def agrees(self) -> bool:
        return self.vertex_transitive == (self.clause is not None)

    def to_json(self) -> dict:
        p = self.params
        return {
            "index": p.index,
            "m": p.m,
            "r": p.r,
            "s": p.s,
            "order": self.order,
            "vt": self.vertex_transitive,
            "clause": self.clause,
            "aut_order": self.aut_order,
            "girth": self.girth,
        }


def census_record(p: FamilyParams, max_order: int = DEFAULT_CENSUS_ORDER, with_aut: bool = True) -> CensusRecord:
    cvg = make_family(p)
    cover = expand(cvg)
    g = cover.graph
    seed = [fibre_rotation(cover, 1).vertex_map]
    vt = is_vertex_transitive(g, seed_generators=seed)
    clause = clause_membership(p, g, max_order) if vt else vt_clause(p)
    return CensusRecord(
        params=p,
        order=g.n_vertices,
        vertex_transitive=vt,
        clause=clause,
        aut_order=aut_order(g) if with_aut else 0,
        girth=girth(g),
    )


def census_points(max_order: int) -> list[FamilyParams]:
    return [p for i in range(1, 26) for p in parameter_points(i, max_order)]


def _record_job(args):
    p, max_order, with_aut = args
    return census_record(p, max_order, with_aut)


def census(
    max_order: int = DEFAULT_CENSUS_ORDER,
    *,
    workers: int | None = None,
    with_aut: bool = True,
) -> list[CensusRecord]:
    """One record per admissible parameter point with cover order <= max_order.

    Records come back in parameter order; ``workers`` > 1 spreads the points
    over processes.
    """
    if max_order > CENSUS_BOUND:
        raise SizeBoundError(f"census order {max_order} exceeds the bound {CENSUS_BOUND}")
    pts = census_points(max_order)
    jobs = [(p, max_order, with_aut) for p in pts]
    workers = workers or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_record_job, jobs))
    return [_record_job(j) for j in jobs]


def default_census_order() -> int:
    val = os.environ.get("CCV_MAX_ORDER")
    return int(val) if val else DEFAULT_CENSUS_ORDER


def disagreements(records: Sequence[CensusRecord]) -> list[CensusRecord]:
    return [r for r in records if not r.agrees]


def distinct_records(records: Sequence[CensusRecord]) -> list[CensusRecord]:
    """Keep the first record of each isomorphism class of covers."""
    kept: list[tuple[CensusRecord, DartGraph, tuple]] = []
    for rec in records:
        g = expand(make_family(rec.params)).graph
        inv = _graph_invariant(g)
        dup = False
        for _, h, hinv in kept:
            if hinv == inv and _search.find_isomorphism(g, h, bound=CENSUS_BOUND) is not None:
                dup = True
                break
        if not dup:
            kept.append((rec, g, inv))
    return [k[0] for k in kept]
