"""Isomorphism and automorphism search by individualisation and refinement.

Vertices carry a base colour (semi-edge and loop content, optional caller
colours) and each ordered pair of distinct adjacent vertices carries an edge
colour (the multiset of dart label pairs between them).  A vertex bijection
preserving both extends to a dart isomorphism by matching parallel darts, so
the search runs on vertices only and the dart map is completed at the end.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from typing import Callable, Hashable, Iterator, Sequence

from .dartgraph import DartGraph, GraphError, Morphism, SizeBoundError

DEFAULT_BOUND = 64


class _Interner:
    def __init__(self) -> None:
        self.ids: dict[Hashable, int] = {}

    def __call__(self, key: Hashable) -> int:
        got = self.ids.get(key)
        if got is None:
            got = self.ids[key] = len(self.ids)
        return got


class _Structure:
    """Vertex-level view of a (labelled) dart graph for the search."""

    def __init__(
        self,
        g: DartGraph,
        labels: Sequence[int] | None,
        colours: Sequence[Hashable] | None,
        interner: _Interner,
    ) -> None:
        self.g = g
        lab = labels if labels is not None else [1] * g.n_darts
        self.labels = lab
        n = g.n_vertices
        base = []
        pairs: list[dict[int, list[tuple[int, int]]]] = [dict() for _ in range(n)]
        for v in range(n):
            semis = []
            loops = []
            for x in g.out_darts[v]:
                y = g.inv[x]
                w = g.beg[y]
                if y == x:
                    semis.append(lab[x])
                elif w == v:
                    if x < y:
                        loops.append(tuple(sorted((lab[x], lab[y]))))
                else:
                    pairs[v].setdefault(w, []).append((lab[x], lab[y]))
            extra = colours[v] if colours is not None else None
            base.append(interner(("v", tuple(sorted(semis)), tuple(sorted(loops)), extra)))
        self.base = base
        self.adj: list[list[tuple[int, int]]] = []
        self.adjd: list[dict[int, int]] = []
        for v in range(n):
            row = [(w, interner(("e", tuple(sorted(p))))) for w, p in sorted(pairs[v].items())]
            self.adj.append(row)
            self.adjd.append(dict(row))


def _refine(
    sa: _Structure, sb: _Structure, ca: list[int], cb: list[int]
) -> tuple[list[int], list[int]] | None:
    """Equitable refinement of both colourings with a shared colour naming."""
    ncols = len(set(ca))
    while True:
        siga = [
            (ca[v], tuple(sorted((e, ca[w]) for w, e in sa.adj[v])))
            for v in range(len(ca))
        ]
        if sb is sa and cb is ca:
            sigb = siga
        else:
            sigb = [
                (cb[v], tuple(sorted((e, cb[w]) for w, e in sb.adj[v])))
                for v in range(len(cb))
            ]
            if Counter(siga) != Counter(sigb):
                return None
        rank = {s: i for i, s in enumerate(sorted(set(siga)))}
        ca = [rank[s] for s in siga]
        cb = ca if sigb is siga else [rank[s] for s in sigb]
        k = len(rank)
        if k == ncols:
            return ca, cb
        ncols = k


def _individualise(cols: list[int], v: int) -> list[int]:
    out = [2 * c + 1 for c in cols]
    out[v] = 2 * cols[v]
    return out


def _target_cell(cols: list[int]) -> int | None:
    counts = Counter(cols)
    best = None
    for c, k in counts.items():
        if k > 1 and (best is None or (k, c) < best):
            best = (k, c)
    return None if best is None else best[1]


def _leaf_map(ca: list[int], cb: list[int]) -> list[int]:
    where = {c: w for w, c in enumerate(cb)}
    return [where[c] for c in ca]


def _check_map(sa: _Structure, sb: _Structure, vmap: Sequence[int]) -> bool:
    for v in range(len(vmap)):
        if sa.base[v] != sb.base[vmap[v]]:
            return False
        row = sb.adjd[vmap[v]]
        if len(row) != len(sa.adj[v]):
            return False
        for w, e in sa.adj[v]:
            if row.get(vmap[w]) != e:
                return False
    return True


class _Search:
    def __init__(self, sa: _Structure, sb: _Structure, interner: _Interner) -> None:
        self.interner = interner
        self.sa = sa
        self.sb = sb
        self.same = sa is sb

    def initial(self, fixed: Sequence[tuple[int, int]] = ()) -> tuple[list[int], list[int]] | None:
        ca = list(self.sa.base)
        cb = ca if self.same and not fixed else list(self.sb.base)
        for v, w in fixed:
            ca = _individualise(ca, v)
            cb = _individualise(cb, w)
        return _refine(self.sa, self.sb, ca, cb)

    def leaves(self, ca: list[int], cb: list[int]) -> Iterator[list[int]]:
        """Yield every valid vertex map below the node ``(ca, cb)``."""
        cell = _target_cell(ca)
        if cell is None:
            vmap = _leaf_map(ca, cb)
            if _check_map(self.sa, self.sb, vmap):
                yield vmap
            return
        v = ca.index(cell)
        na = _individualise(ca, v)
        for w in [u for u, c in enumerate(cb) if c == cell]:
            nb = _individualise(cb, w)
            ref = _refine(self.sa, self.sb, na, nb)
            if ref is not None:
                yield from self.leaves(*ref)

    def first(self, fixed: Sequence[tuple[int, int]] = ()) -> list[int] | None:
        start = self.initial(fixed)
        if start is None:
            return None
        return next(self.leaves(*start), None)


# -- dart completion -------------------------------------------------------


def _dart_groups(g: DartGraph, labels: Sequence[int], v: int):
    """Group the darts at ``v`` into matching classes.

    Returns (semi, loops, links): ``semi`` maps label -> darts, ``loops`` maps
    sorted label pair -> carrier darts oriented so the first label comes first,
    ``links`` maps (other end, label, inverse label) -> darts.
    """
    semi: dict[int, list[int]] = {}
    loops: dict[tuple[int, int], list[int]] = {}
    links: dict[tuple[int, int, int], list[int]] = {}
    for x in g.out_darts[v]:
        y = g.inv[x]
        if y == x:
            semi.setdefault(labels[x], []).append(x)
        elif g.beg[y] == v:
            if x < y:
                a, b = labels[x], labels[y]
                if a <= b:
                    loops.setdefault((a, b), []).append(x)
                else:
                    loops.setdefault((b, a), []).append(y)
        else:
            links.setdefault((g.beg[y], labels[x], labels[y]), []).append(x)
    return semi, loops, links


def complete_darts(
    g: DartGraph,
    h: DartGraph,
    vmap: Sequence[int],
    lg: Sequence[int] | None = None,
    lh: Sequence[int] | None = None,
) -> tuple[int, ...]:
    """Extend a structure-preserving vertex map to a dart map (first choice)."""
    return next(iter_dart_completions(g, h, vmap, lg, lh))


def _block_choices(g, h, vmap, lg, lh):
    """Per matching class: (source darts, target darts, kind)."""
    lg = lg if lg is not None else [1] * g.n_darts
    lh = lh if lh is not None else [1] * h.n_darts
    blocks = []
    for v in g.vertices:
        sg, og, kg = _dart_groups(g, lg, v)
        sh, oh, kh = _dart_groups(h, lh, vmap[v])
        for lab, ds in sorted(sg.items()):
            blocks.append((ds, sh.get(lab, []), "semi"))
        for key, ds in sorted(og.items()):
            blocks.append((ds, oh.get(key, []), "loop-sym" if key[0] == key[1] else "loop"))
        for (w, a, b), ds in sorted(kg.items()):
            if v < w:
                blocks.append((ds, kh.get((vmap[w], a, b), []), "link"))
    for ds, es, _ in blocks:
        if len(ds) != len(es):
            raise GraphError("vertex map does not preserve the dart structure")
    return lg, lh, blocks


def iter_dart_completions(g, h, vmap, lg=None, lh=None) -> Iterator[tuple[int, ...]]:
    _, _, blocks = _block_choices(g, h, vmap, lg, lh)
    options = []
    for ds, es, kind in blocks:
        choices = []
        for perm in itertools.permutations(es):
            if kind == "loop-sym":
                for flips in itertools.product((False, True), repeat=len(ds)):
                    choices.append((perm, flips))
            else:
                choices.append((perm, (False,) * len(ds)))
        options.append(choices)
    for combo in itertools.product(*options):
        dmap = [-1] * g.n_darts
        for (ds, _, _), (perm, flips) in zip(blocks, combo):
            for x, y, f in zip(ds, perm, flips):
                if f:
                    y = h.inv[y]
                dmap[x] = y
                dmap[g.inv[x]] = h.inv[y]
        yield tuple(dmap)


def completion_count(g: DartGraph, vmap: Sequence[int], labels: Sequence[int] | None = None) -> int:
    """Number of dart maps extending the vertex map ``vmap`` of ``g`` to itself."""
    _, _, blocks = _block_choices(g, g, vmap, labels, labels)
    total = 1
    for ds, _, kind in blocks:
        total *= math.factorial(len(ds))
        if kind == "loop-sym":
            total *= 2 ** len(ds)
    return total


# -- public entry points ----------------------------------------------------


def _check_bound(bound: int | None, *graphs: DartGraph) -> None:
    if bound is None:
        return
    for g in graphs:
        if g.n_vertices > bound:
            raise SizeBoundError(f"graph has {g.n_vertices} vertices; bound is {bound}")


def _make_search(g, h, lg=None, lh=None, cg=None, ch=None) -> _Search:
    interner = _Interner()
    sa = _Structure(g, lg, cg, interner)
    if h is g and lh is lg and ch is cg:
        sb = sa
    else:
        sb = _Structure(h, lh, ch, interner)
    return _Search(sa, sb, interner)


def find_isomorphism(
    g: DartGraph,
    h: DartGraph,
    *,
    labels_g: Sequence[int] | None = None,
    labels_h: Sequence[int] | None = None,
    colours_g: Sequence[Hashable] | None = None,
    colours_h: Sequence[Hashable] | None = None,
    fixed: Sequence[tuple[int, int]] = (),
    bound: int | None = DEFAULT_BOUND,
) -> Morphism | None:
    """An isomorphism ``g -> h`` respecting labels/colours and fixed pairs, or None."""
    _check_bound(bound, g, h)
    if g.n_vertices != h.n_vertices or g.n_darts != h.n_darts:
        return None
    if g.n_vertices == 0:
        return Morphism((), ())
    s = _make_search(g, h, labels_g, labels_h, colours_g, colours_h)
    vmap = s.first(fixed)
    if vmap is None:
        return None
    return Morphism(tuple(vmap), complete_darts(g, h, vmap, labels_g, labels_h))


def vertex_automorphisms(
    g: DartGraph,
    *,
    labels: Sequence[int] | None = None,
    colours: Sequence[Hashable] | None = None,
    bound: int | None = DEFAULT_BOUND,
) -> list[list[int]]:
    """All vertex permutations induced by automorphisms of ``g``."""
    _check_bound(bound, g)
    if g.n_vertices == 0:
        return [[]]
    s = _make_search(g, g, labels, labels, colours, colours)
    start = s.initial()
    return list(s.leaves(*start)) if start else []


def all_automorphisms(
    g: DartGraph,
    *,
    labels: Sequence[int] | None = None,
    bound: int | None = DEFAULT_BOUND,
) -> list[Morphism]:
    out = []
    for vmap in vertex_automorphisms(g, labels=labels, bound=bound):
        for dmap in iter_dart_completions(g, g, vmap, labels, labels):
            out.append(Morphism(tuple(vmap), dmap))
    return out


def _orbit_closure(seed: int, gens: Sequence[Sequence[int]]) -> set[int]:
    orbit = {seed}
    frontier = [seed]
    while frontier:
        a = frontier.pop()
        for p in gens:
            b = p[a]
            if b not in orbit:
                orbit.add(b)
                frontier.append(b)
    return orbit


def automorphism_order(
    g: DartGraph,
    *,
    labels: Sequence[int] | None = None,
    colours: Sequence[Hashable] | None = None,
    bound: int | None = DEFAULT_BOUND,
) -> int:
    """Order of the dart-level automorphism group via a stabiliser chain."""
    _check_bound(bound, g)
    if g.n_vertices == 0:
        return 1
    s = _make_search(g, g, labels, labels, colours, colours)
    start = s.initial()
    ca, _ = start
    order = 1
    while True:
        cell = _target_cell(ca)
        if cell is None:
            break
        v = ca.index(cell)
        cands = [u for u, c in enumerate(ca) if c == cell]
        gens: list[list[int]] = []
        orbit = {v}
        na = _individualise(ca, v)
        for w in cands:
            if w in orbit:
                continue
            nb = _individualise(ca, w)
            ref = _refine(s.sa, s.sb, na, nb)
            if ref is None:
                continue
            vmap = next(s.leaves(*ref), None)
            if vmap is not None:
                gens.append(vmap)
                orbit = _orbit_closure(v, gens)
        order *= len(orbit)
        ref = _refine(s.sa, s.sa, na, na)
        ca = ref[0]
    return order * completion_count(g, list(range(g.n_vertices)), labels)


def vertex_orbit(
    g: DartGraph,
    v: int,
    *,
    seed_generators: Sequence[Sequence[int]] = (),
    bound: int | None = DEFAULT_BOUND,
) -> set[int]:
    """Orbit of ``v`` under Aut(g); known automorphisms shortcut the search.

    A failed target ``w`` rules out its whole orbit under the automorphisms
    known so far, so each orbit of the known group is tested at most once.
    """
    _check_bound(bound, g)
    s = _make_search(g, g)
    start = s.initial()
    ca = start[0]
    gens = [list(p) for p in seed_generators]
    orbit = _orbit_closure(v, gens)
    excluded: set[int] = set()
    for w in [u for u, c in enumerate(ca) if c == ca[v]]:
        if w in orbit or w in excluded:
            continue
        vmap = s.first([(v, w)])
        if vmap is not None:
            gens.append(vmap)
            orbit = _orbit_closure(v, gens)
        else:
            excluded |= _orbit_closure(w, gens)
    return orbit


def dart_orbit_count(g: DartGraph, bound: int | None = DEFAULT_BOUND) -> int:
    """Number of Aut(g)-orbits on darts of a simple graph."""
    _check_bound(bound, g)
    if not g.is_simple():
        raise GraphError("dart orbits are computed for simple graphs only")
    s = _make_search(g, g)
    arcs = [(g.beg[x], g.term(x)) for x in g.darts]
    index = {a: i for i, a in enumerate(arcs)}
    parent = list(range(len(arcs)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def absorb(vmap):
        for i, (a, b) in enumerate(arcs):
            j = index[(vmap[a], vmap[b])]
            ra, rb = find(i), find(j)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    reps: list[int] = []
    for i, (a, b) in enumerate(arcs):
        if any(find(r) == find(i) for r in reps):
            continue
        for r in reps:
            ra, rb = arcs[r]
            vmap = s.first([(ra, a), (rb, b)])
            if vmap is not None:
                absorb(vmap)
                break
        else:
            reps.append(i)
    return len(reps)


def canonical_form(
    g: DartGraph,
    labels: Sequence[int] | None = None,
    bound: int | None = DEFAULT_BOUND,
) -> tuple:
    """Isomorphism-invariant encoding: the least relabelled structure over all search leaves."""
    _check_bound(bound, g)
    if g.n_vertices == 0:
        return (0, 0, ())
    s = _make_search(g, g, labels, labels)
    keys = {i: k for k, i in s.interner.ids.items()}
    best = None
    for pos in _all_leaf_orders(s, s.initial()):
        order = sorted(range(len(pos)), key=pos.__getitem__)
        enc = (
            tuple(keys[s.sa.base[v]] for v in order),
            tuple(
                sorted(
                    (pos[v], pos[w], keys[e])
                    for v in range(len(pos))
                    for w, e in s.sa.adj[v]
                )
            ),
        )
        if best is None or enc < best:
            best = enc
    return (g.n_vertices, g.n_darts, best)


def _all_leaf_orders(s: _Search, start) -> Iterator[list[int]]:
    """Every discrete refinement leaf, as the vertex -> position map."""

    def rec(ca):
        cell = _target_cell(ca)
        if cell is None:
            yield ca
            return
        for v in [u for u, c in enumerate(ca) if c == cell]:
            na = _individualise(ca, v)
            ref = _refine(s.sa, s.sa, na, na)
            yield from rec(ref[0])

    if start is None:
        return
    for leaf in rec(start[0]):
        order = sorted(range(len(leaf)), key=leaf.__getitem__)
        pos = [0] * len(leaf)
        for i, v in enumerate(order):
            pos[v] = i
        yield pos
