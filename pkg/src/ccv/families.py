"""The 25 cubic quotient templates and the parameterised cover families on them.

Each template is a dart-labelled graph on at most three vertices with a
distinguished vertex whose index is the family parameter ``m``, up to two
voltage slots ``r`` and ``s`` on carrier darts, half-index voltages on
semi-edges and zero voltages elsewhere.  ``make_family`` instantiates a
template; ``admissible`` decides whether a parameter point belongs to the
classification list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterator

from .dartgraph import DartGraph, GraphError
from .voltage import (
    CyclicVoltageGraph,
    LabelledGraph,
    VoltageError,
    extend,
    scaled_iota,
)

# Edge descriptions: ("link", u, v, lam(u->v), lam(v->u), slot),
# ("loop", v, slot), ("semi", v).  A slot of None means voltage 0.
_SHAPES: dict[int, tuple[int, tuple]] = {
    1: (1, (("loop", 0, "r"), ("semi", 0))),
    2: (2, (("link", 0, 1, 1, 1, None), ("loop", 0, "r"), ("loop", 1, "s"))),
    3: (2, (("link", 0, 1, 1, 1, None), ("link", 0, 1, 1, 1, "r"), ("semi", 0), ("semi", 1))),
    4: (2, (("link", 0, 1, 1, 1, None), ("link", 0, 1, 1, 1, "r"), ("link", 0, 1, 1, 1, "s"))),
    5: (2, (("link", 0, 1, 1, 2, None), ("loop", 0, "r"), ("semi", 1))),
    6: (2, (("link", 0, 1, 1, 3, None), ("loop", 0, "r"))),
    7: (3, (("link", 0, 1, 1, 3, None), ("link", 0, 2, 1, 3, None), ("semi", 0))),
    8: (3, (("link", 0, 2, 2, 1, None), ("link", 1, 2, 2, 1, None), ("link", 0, 1, 1, 1, "r"), ("semi", 2))),
    9: (3, (("link", 0, 1, 1, 2, None), ("link", 0, 2, 1, 3, None), ("semi", 0), ("semi", 1))),
    10: (3, (("link", 0, 1, 1, 2, None), ("link", 0, 2, 1, 2, None), ("semi", 0), ("semi", 1), ("semi", 2))),
    11: (2, (("link", 0, 1, 2, 3, None), ("semi", 0))),
    12: (3, (("link", 0, 1, 2, 1, None), ("link", 1, 2, 1, 1, None), ("semi", 0), ("semi", 1), ("loop", 2, "r"))),
    13: (3, (("link", 0, 1, 3, 1, None), ("link", 1, 2, 1, 1, None), ("semi", 1), ("loop", 2, "r"))),
    14: (3, (("link", 0, 1, 1, 1, None), ("link", 0, 2, 2, 3, None), ("loop", 1, "r"))),
    15: (3, (("link", 0, 1, 1, 2, None), ("link", 0, 2, 2, 3, None), ("semi", 1))),
    16: (3, (("link", 0, 1, 1, 3, None), ("link", 0, 2, 2, 3, None))),
    17: (3, (("link", 0, 1, 1, 1, None), ("link", 0, 2, 2, 1, None), ("loop", 1, "r"), ("loop", 2, "s"))),
    18: (3, (("link", 0, 1, 2, 1, None), ("link", 1, 2, 2, 1, None), ("semi", 0), ("loop", 2, "r"))),
    19: (3, (("link", 0, 1, 1, 2, None), ("link", 1, 2, 1, 3, None), ("loop", 0, "r"))),
    20: (3, (("link", 0, 1, 1, 1, None), ("link", 0, 1, 1, 1, "r"), ("link", 0, 2, 1, 3, None), ("semi", 1))),
    21: (3, (("link", 0, 1, 2, 1, None), ("link", 1, 2, 1, 1, None), ("link", 1, 2, 1, 1, "r"), ("semi", 0), ("semi", 2))),
    22: (3, (("link", 0, 1, 1, 1, None), ("link", 0, 1, 1, 1, "r"), ("link", 0, 2, 1, 1, None), ("semi", 1), ("loop", 2, "s"))),
    23: (3, (("link", 0, 2, 1, 1, None), ("link", 1, 2, 1, 1, None), ("link", 0, 1, 1, 1, "r"), ("link", 0, 1, 1, 1, "s"), ("semi", 2))),
    24: (3, (("link", 0, 1, 1, 1, None), ("link", 1, 2, 1, 1, None), ("link", 0, 2, 1, 1, "r"), ("semi", 0), ("semi", 1), ("semi", 2))),
    25: (3, (("link", 0, 1, 1, 1, None), ("link", 0, 2, 1, 1, None), ("loop", 1, "r"), ("loop", 2, "s"), ("semi", 0))),
}

# Families with a single admissible parameter point and no voltage slots.
SPORADIC_M = {7: 2, 9: 4, 10: 2, 11: 4, 15: 6, 16: 1}


@dataclass(frozen=True)
class QuotientTemplate:
    index: int
    labelled: LabelledGraph
    distinguished_vertex: int
    voltage_slots: dict[str, int]
    half_darts: tuple[int, ...]
    min_iota: tuple[int, ...] = field(default=())

    @property
    def graph(self) -> DartGraph:
        return self.labelled.graph

    @property
    def arity(self) -> int:
        return len(self.voltage_slots)

    def fixed_voltages(self) -> dict[int, str | int]:
        """Carrier dart -> 0, or ``"half"`` for semi-edges carrying half the index."""
        out: dict[int, str | int] = {}
        for x in self.graph.edges:
            if x in self.half_darts:
                out[x] = "half"
            elif x not in self.voltage_slots.values():
                out[x] = 0
        return out

    def iota_for(self, m: int) -> tuple[int, ...]:
        return scaled_iota(self.labelled, self.distinguished_vertex, m)

    def order(self, m: int) -> int:
        """Number of cover vertices for parameter ``m`` (no validity check)."""
        base = self.min_iota[self.distinguished_vertex]
        return sum(i * m // base for i in self.min_iota)


def _build(index: int) -> QuotientTemplate:
    nv, edges = _SHAPES[index]
    beg: list[int] = []
    inv: list[int] = []
    lam: list[int] = []
    slots: dict[str, int] = {}
    half: list[int] = []
    for e in edges:
        k = len(beg)
        if e[0] == "link":
            _, u, v, a, b, slot = e
            beg += [u, v]
            inv += [k + 1, k]
            lam += [a, b]
        elif e[0] == "loop":
            _, u, slot = e
            beg += [u, u]
            inv += [k + 1, k]
            lam += [1, 1]
        else:
            _, u = e
            slot = None
            beg.append(u)
            inv.append(k)
            lam.append(1)
            half.append(k)
        if slot is not None:
            slots[slot] = k
    lg = LabelledGraph(DartGraph(nv, tuple(beg), tuple(inv)), tuple(lam))
    ext = extend(lg)
    if not ext.extendable:
        raise GraphError(f"template {index} is not extendable")
    least = min(ext.iota)
    dist = ext.iota.index(least)
    return QuotientTemplate(index, lg, dist, dict(sorted(slots.items())), tuple(half), ext.iota)


@lru_cache(maxsize=None)
def quotient_template(index: int) -> QuotientTemplate:
    if index not in _SHAPES:
        raise GraphError(f"template index must be in 1..25, got {index}")
    return _build(index)


def all_templates() -> list[QuotientTemplate]:
    return [quotient_template(i) for i in range(1, 26)]


# -- parameters and admissibility -------------------------------------------------


@dataclass(frozen=True)
class FamilyParams:
    index: int
    m: int
    r: int | None = None
    s: int | None = None

    def label(self) -> str:
        vals = [v for v in (self.r, self.s) if v is not None]
        if not vals:
            return f"Gamma_{self.index}({self.m})"
        return f"Gamma_{self.index}({self.m};{','.join(map(str, vals))})"


class AdmissibilityError(VoltageError):
    pass


def _half_gcd(m: int, *vals: int) -> int:
    return math.gcd(m // 2, *vals)


PREDICATE_TEXT = {
    "sporadic": "fixed parameter point, no voltage parameters",
    1: "m even, m >= 4, r != 0, gcd(m/2, r) = 1",
    "halfr": "m even, r != 0, gcd(m/2, r) = 1",
    "fullr": "r != 0, gcd(m, r) = 1",
    8: "gcd(m, r) = 1",
    "twoloops": "m >= 3, r != 0 != s, gcd(m, r, s) = 1",
    4: "m >= 3, 0 < r < s, gcd(m, r, s) = 1",
    5: "m even, r != 0, gcd(m/2, r) = 1",
    23: "m even, r != s, gcd(m/2, r) = 1",
    24: "m even, gcd(m/2, r) = 1",
    "tricirc": "m even, m >= 4, r != 0 != s, gcd(m/2, r, s) = 1",
}


def _predicate_key(index: int):
    if index in SPORADIC_M:
        return "sporadic"
    if index in (3, 12, 13, 14, 18, 20, 21):
        return "halfr"
    if index in (6, 19):
        return "fullr"
    if index in (2, 17):
        return "twoloops"
    if index in (22, 25):
        return "tricirc"
    return index


def predicate_text(index: int) -> str:
    quotient_template(index)
    key = _predicate_key(index)
    text = PREDICATE_TEXT[key]
    if key == "sporadic":
        text = f"m = {SPORADIC_M[index]}; " + text
    return text


def _classification_clause(p: FamilyParams) -> list[str]:
    """Violated conditions of the classification list for ``p`` (empty when satisfied)."""
    i, m, r, s = p.index, p.m, p.r, p.s
    bad = []
    key = _predicate_key(i)
    if key == "sporadic":
        if m != SPORADIC_M[i]:
            bad.append(f"m = {SPORADIC_M[i]}")
        return bad
    even = m % 2 == 0
    if key in (1, "halfr", 5, 23, 24, "tricirc") and not even:
        return ["m even"]
    if key in (1, "tricirc") and m < 4:
        bad.append("m >= 4")
    if key in ("twoloops", 4) and m < 3:
        bad.append("m >= 3")
    if key in (1, "halfr", "fullr", 5, "twoloops", "tricirc") and r == 0:
        bad.append("r != 0")
    if key in ("twoloops", "tricirc") and s == 0:
        bad.append("s != 0")
    if key == 4 and not 0 < r < s:
        bad.append("0 < r < s")
    if key == 23 and r == s:
        bad.append("r != s")
    if key in (1, "halfr", 5, 23, 24) and _half_gcd(m, r) != 1:
        bad.append("gcd(m/2, r) = 1")
    if key in ("fullr", 8) and math.gcd(m, r) != 1:
        bad.append("gcd(m, r) = 1")
    if key in ("twoloops", 4) and math.gcd(m, r, s) != 1:
        bad.append("gcd(m, r, s) = 1")
    if key == "tricirc" and _half_gcd(m, r, s) != 1:
        bad.append("gcd(m/2, r, s) = 1")
    return bad


def _slot_range(t: QuotientTemplate, iota: tuple[int, ...], slot: str) -> tuple[int, int, int | None]:
    """Allowed simplified voltage range ``[lo, hi)`` and an excluded value for a slot."""
    g = t.graph
    x = t.voltage_slots[slot]
    u, v = g.beg[x], g.term(x)
    if u == v:
        k = iota[u]
        return 1, k, (k // 2 if k % 2 == 0 else None)
    return 0, math.gcd(iota[u], iota[v]), None


def violations(p: FamilyParams) -> list[str]:
    """Every reason ``p`` is not an admissible parameter point (empty when admissible).

    Besides the classification conditions, voltages must lie in the simplified
    range: loop voltages in ``(0, iota)`` avoiding ``iota/2``, link voltages in
    ``[0, gcd of the end indices)``.
    """
    t = quotient_template(p.index)
    names = list(t.voltage_slots)
    given = {"r": p.r, "s": p.s}
    for name in ("r", "s"):
        if name in names and given[name] is None:
            return [f"parameter {name} is required"]
        if name not in names and given[name] is not None:
            return [f"family {p.index} takes no parameter {name}"]
    if p.m < 1:
        return ["m >= 1"]
    base = t.min_iota[t.distinguished_vertex]
    if p.m % base:
        return [f"m divisible by {base}"]
    bad = _classification_clause(p)
    if bad:
        return bad
    iota = t.iota_for(p.m)
    for x in t.half_darts:
        if iota[t.graph.beg[x]] % 2:
            return ["semi-edge index even"]
    for name in names:
        lo, hi, skip = _slot_range(t, iota, name)
        val = given[name]
        if not lo <= val < hi or val == skip:
            extra = f", != {skip}" if skip is not None else ""
            bad.append(f"{lo} <= {name} < {hi}{extra}")
    return bad


def admissible(p: FamilyParams) -> bool:
    return not violations(p)


def make_family(p: FamilyParams, *, check: bool = True) -> CyclicVoltageGraph:
    """Instantiate the template of ``p.index`` at the given parameters."""
    if check:
        bad = violations(p)
        if bad:
            raise AdmissibilityError(
                f"{p.label()} is not admissible; violated: {'; '.join(bad)} "
                f"(requires {predicate_text(p.index)})"
            )
    t = quotient_template(p.index)
    iota = t.iota_for(p.m)
    volts: dict[int, int] = {}
    for x in t.half_darts:
        volts[x] = iota[t.graph.beg[x]] // 2
    given = {"r": p.r, "s": p.s}
    for name, x in t.voltage_slots.items():
        volts[x] = given[name]
    return CyclicVoltageGraph.from_carriers(t.labelled, iota, volts)


def family(index: int, m: int, r: int | None = None, s: int | None = None, **kw) -> CyclicVoltageGraph:
    return make_family(FamilyParams(index, m, r, s), **kw)


def parameter_points(index: int, max_order: int) -> Iterator[FamilyParams]:
    """Every admissible parameter point of a family with cover order at most ``max_order``."""
    t = quotient_template(index)
    base = t.min_iota[t.distinguished_vertex]
    if index in SPORADIC_M:
        p = FamilyParams(index, SPORADIC_M[index])
        if t.order(p.m) <= max_order and admissible(p):
            yield p
        return
    m = base
    while t.order(m) <= max_order:
        iota = t.iota_for(m)
        ranges = {name: _slot_range(t, iota, name) for name in t.voltage_slots}
        rr = range(ranges["r"][0], ranges["r"][1])
        ss = range(ranges["s"][0], ranges["s"][1]) if "s" in ranges else [None]
        for r in rr:
            for s in ss:
                p = FamilyParams(index, m, r, s)
                if admissible(p):
                    yield p
        m += base


# -- golden template files ---------------------------------------------------------


def template_cvg_text(t: QuotientTemplate) -> str:
    """The template as ``.cvg`` text at its least index, annotated in comments."""
    from .formats import write_cvg

    header = [f"template {t.index}", f"distinguished {t.distinguished_vertex}"]
    for name, x in t.voltage_slots.items():
        header.append(f"slot {name} {x}")
    for x in t.half_darts:
        header.append(f"half {x}")
    header.append(f"predicate {predicate_text(t.index)}")
    zeta = tuple(0 for _ in t.graph.darts)
    cvg = CyclicVoltageGraph(t.labelled, t.min_iota, zeta)
    return write_cvg(cvg, comments=header)


def golden_text(index: int) -> str:
    name = f"delta_{index:02d}.cvg"
    return resources.files("ccv").joinpath("templates", name).read_text()


def template_from_cvg_text(text: str) -> QuotientTemplate:
    """Rebuild a template from annotated ``.cvg`` text."""
    from .formats import parse_cvg

    cvg, comments = parse_cvg(text, keep_comments=True)
    index = dist = None
    slots: dict[str, int] = {}
    half = []
    for c in comments:
        parts = c.split()
        if not parts:
            continue
        if parts[0] == "template":
            index = int(parts[1])
        elif parts[0] == "distinguished":
            dist = int(parts[1])
        elif parts[0] == "slot":
            slots[parts[1]] = int(parts[2])
        elif parts[0] == "half":
            half.append(int(parts[1]))
    if index is None or dist is None:
        raise GraphError("template annotations missing")
    return QuotientTemplate(index, cvg.labelled, dist, dict(sorted(slots.items())), tuple(half), cvg.iota)
