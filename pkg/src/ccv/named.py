"""Standard cubic graphs used as isomorphism targets."""

from __future__ import annotations

import itertools
import re
from typing import Sequence

from .dartgraph import DartGraph, GraphError


def lcf(n: int, shifts: Sequence[int]) -> DartGraph:
    """Hamiltonian cubic graph from LCF notation ``[shifts]^(n/len)``."""
    if n % len(shifts):
        raise GraphError("LCF shift list must tile the vertex count")
    edges = {(i, (i + 1) % n) for i in range(n)}
    for i in range(n):
        edges.add((i, (i + shifts[i % len(shifts)]) % n))
    return DartGraph.simple(n, edges)


def generalised_petersen(m: int, r: int) -> DartGraph:
    """GP(m, r): outer cycle u_i, spokes u_i v_i, inner edges v_i v_{i+r}."""
    if m < 3 or not 1 <= r < m or 2 * r == m:
        raise GraphError(f"GP({m},{r}) needs m >= 3 and 1 <= r < m with 2r != m")
    edges = []
    for i in range(m):
        edges.append((i, (i + 1) % m))
        edges.append((i, m + i))
        edges.append((m + i, m + (i + r) % m))
    return DartGraph.simple(2 * m, edges)


def prism(n: int) -> DartGraph:
    """The n-prism C_n x K_2."""
    return generalised_petersen(n, 1)


def moebius_ladder(n: int) -> DartGraph:
    """Möbius ladder with n rungs: a 2n-cycle plus its n long diagonals."""
    if n < 2:
        raise GraphError("Möbius ladder needs at least 2 rungs")
    m = 2 * n
    edges = [(i, (i + 1) % m) for i in range(m)] + [(i, i + n) for i in range(n)]
    return DartGraph.simple(m, edges)


def circulant(n: int, connections: Sequence[int]) -> DartGraph:
    """Cay(Z_n, ±connections) as a simple graph."""
    edges = set()
    for i in range(n):
        for c in connections:
            j = (i + c) % n
            if j == i:
                raise GraphError("connection set contains 0")
            edges.add((min(i, j), max(i, j)))
    return DartGraph.simple(n, edges)


def complete_graph(n: int) -> DartGraph:
    return DartGraph.simple(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> DartGraph:
    return DartGraph.simple(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cube() -> DartGraph:
    return DartGraph.simple(
        8, [(a, a ^ (1 << k)) for a in range(8) for k in range(3) if a < a ^ (1 << k)]
    )


_FIXED = {
    "K4": lambda: complete_graph(4),
    "K33": lambda: complete_bipartite(3, 3),
    "Q3": cube,
    "Petersen": lambda: generalised_petersen(5, 2),
    "Heawood": lambda: lcf(14, [5, -5]),
    "GP(8,3)": lambda: generalised_petersen(8, 3),
    "Pappus": lambda: lcf(18, [5, 7, -7, 7, -7, -5]),
    "GP(10,2)": lambda: generalised_petersen(10, 2),
    "GP(10,3)": lambda: generalised_petersen(10, 3),
    "TutteCoxeter": lambda: lcf(30, [-13, -9, 7, -7, 9, 13]),
}

EXCEPTIONAL = ("K4", "K33", "Q3", "Petersen", "Heawood", "GP(8,3)", "Pappus", "GP(10,2)", "GP(10,3)")

_ALIASES = {
    "K_4": "K4",
    "K3,3": "K33",
    "K_{3,3}": "K33",
    "K_3,3": "K33",
    "CUBE": "Q3",
    "Q_3": "Q3",
    "DODECAHEDRON": "GP(10,2)",
    "TUTTE-COXETER": "TutteCoxeter",
    "TUTTECOXETER": "TutteCoxeter",
    "TUTTE8CAGE": "TutteCoxeter",
}


def named_graph(name: str) -> DartGraph:
    """Look up a graph by name, e.g. ``Petersen``, ``GP(7,2)``, ``Prism(5)``, ``Moebius(4)``."""
    key = name.replace(" ", "")
    key = _ALIASES.get(key.upper(), key)
    for fixed in _FIXED:
        if fixed.upper() == key.upper():
            return _FIXED[fixed]()
    m = re.fullmatch(r"(?i)(GP|Prism|Moebius)\((\d+)(?:,(\d+))?\)", key)
    if m:
        kind = m.group(1).lower()
        a = int(m.group(2))
        b = m.group(3)
        if kind == "gp" and b is not None:
            return generalised_petersen(a, int(b))
        if kind == "prism" and b is None:
            return prism(a)
        if kind == "moebius" and b is None:
            return moebius_ladder(a)
    raise GraphError(f"unknown graph name {name!r}")


def names() -> list[str]:
    return list(_FIXED)
