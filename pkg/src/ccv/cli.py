"""Command-line interface: ``ccv <command> ...``.

Exit status is 0 on success, 1 on a domain error (bad file, inadmissible
parameters, size bound) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, enumeration, families, formats
from .dartgraph import DartGraph, GraphError
from .named import named_graph
from .voltage import connected_cover, expand, extend, is_ccv, is_cubic_cover, is_simple_cover

GRAPH_SUFFIXES = (".g6", ".dgf", ".dot")


class DomainError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _suffix(path: str) -> str:
    return Path(path).suffix.lower()


def _graph_text(g: DartGraph, suffix: str, comments=()) -> str:
    if suffix == ".g6":
        return formats.write_graph6(g) + "\n"
    if suffix == ".dgf":
        return formats.write_dgf(g, comments)
    if suffix == ".dot":
        return formats.write_dot(g)
    raise DomainError(f"unsupported output format {suffix or '(none)'}; use .g6, .dgf or .dot")


def _load_graph(path: str | None, name: str | None) -> DartGraph:
    """A simple graph from a file (.g6, .dgf, or the cover of a .cvg) or a graph name."""
    if name:
        return named_graph(name)
    if not path:
        raise DomainError("give --in FILE or --name NAME")
    text = _read(path)
    suf = _suffix(path)
    if suf == ".g6":
        return formats.parse_graph6(text)
    if suf == ".dgf":
        return formats.parse_dgf(text)
    if suf == ".cvg":
        return expand(formats.parse_cvg(text)).graph
    raise DomainError(f"unsupported input format {suf or '(none)'}; use .g6, .dgf or .cvg")


# -- commands -------------------------------------------------------------------


def cmd_cover(args) -> int:
    cvg = formats.parse_cvg(_read(args.inp))
    g = expand(cvg).graph
    _emit(_graph_text(g, _suffix(args.out) if args.out else args.format), args.out)
    return 0


def cmd_family(args) -> int:
    p = families.FamilyParams(args.index, args.m, args.r, args.s)
    families.quotient_template(args.index)
    if args.explain:
        bad = families.violations(p)
        status = "admissible" if not bad else "violated: " + "; ".join(bad)
        print(f"{p.label()}: requires {families.predicate_text(args.index)}; {status}", file=sys.stderr)
    cvg = families.make_family(p)
    suf = _suffix(args.out) if args.out else ".cvg"
    if suf == ".cvg":
        text = formats.write_cvg(cvg, [p.label()])
    else:
        text = _graph_text(expand(cvg).graph, suf)
    _emit(text, args.out)
    return 0


def cmd_families(args) -> int:
    for t in families.all_templates():
        names = ",".join(t.voltage_slots) or "-"
        print(f"{t.index:2d}  params m;{names}  {families.predicate_text(t.index)}")
    return 0


def cmd_enumerate(args) -> int:
    classes = enumeration.enumerate_quotients(args.max_vertices)
    man = enumeration.manifest(classes)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for entry, c in zip(man["classes"], classes):
            cvg = enumeration.constructive_extension(c.representative)
            comments = [f"class {entry['file'][6:8]}", f"template {entry['template']}"]
            (out / entry["file"]).write_text(formats.write_cvg(cvg, comments))
        (out / "manifest.json").write_text(_dump(man))
    print(_dump({"count": man["count"], "by_vertices": man["by_vertices"]}), end="")
    return 0


def cmd_quotient(args) -> int:
    g = _load_graph(args.inp, args.name)
    quots, indices = enumeration.cyclic_quotients(g, max_orbits=args.max_orbits)
    rows = []
    for q in quots:
        rows.append(
            {
                "generator": list(q.generator.vertex_map),
                "orbits": q.labelled.graph.n_vertices,
                "template": q.index,
            }
        )
    print(_dump({"indices": sorted(indices), "quotients": rows}), end="")
    return 0


def cmd_check(args) -> int:
    cvg = formats.parse_cvg(_read(args.inp))
    report = {
        "extendable": extend(cvg.labelled).extendable,
        "connected": connected_cover(cvg),
        "simple": is_simple_cover(cvg),
        "cubic": is_cubic_cover(cvg),
        "ccv": is_ccv(cvg),
    }
    print(_dump(report), end="")
    return 0


def cmd_census(args) -> int:
    max_order = args.max_order if args.max_order is not None else analysis.default_census_order()
    records = analysis.census(max_order, workers=args.workers)
    bad = analysis.disagreements(records)
    distinct = analysis.distinct_records(records)
    shown = records if args.all else distinct
    if args.json:
        Path(args.json).write_text(_dump([r.to_json() for r in shown]))
    vt = sum(r.vertex_transitive for r in records)
    print(f"points {len(records)}  vertex-transitive {vt}  distinct covers {len(distinct)}  disagreements {len(bad)}")
    for r in bad:
        print(f"  disagreement: {r.params.label()} vt={r.vertex_transitive} clause={r.clause}")
    return 1 if bad else 0


def cmd_analyze(args) -> int:
    g = _load_graph(args.inp, args.name)
    if not g.is_simple() or not g.is_regular(3):
        raise DomainError("analyze needs a simple cubic graph")
    report = analysis.signature_report(g, args.c).to_json()
    gi = report["girth"]
    report["cycle_regular_by_c"] = {
        str(c): analysis.is_cycle_regular(g, c) for c in range(gi, max(gi, args.max_c) + 1)
    }
    print(_dump(report), end="")
    return 0


def cmd_convert(args) -> int:
    text = _read(args.inp)
    src, dst = _suffix(args.inp), _suffix(args.out)
    if src == ".cvg":
        cvg, comments = formats.parse_cvg(text, keep_comments=True)
        if dst == ".cvg":
            _emit(formats.write_cvg(cvg, comments), args.out)
            return 0
        # other targets take the base graph; use ``cover`` for the expansion
        _emit(_graph_text(cvg.graph, dst, comments), args.out)
        return 0
    if dst == ".cvg":
        raise DomainError("a plain graph carries no labels or voltages; cannot write .cvg")
    comments = ()
    if src == ".dgf":
        g, comments = formats.parse_dgf(text, keep_comments=True)
    elif src == ".g6":
        g = formats.parse_graph6(text)
    else:
        raise DomainError(f"unsupported input format {src or '(none)'}")
    _emit(_graph_text(g, dst, comments), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ccv", description="Cyclic generalised voltage graphs and their cubic covers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cover", help="expand a .cvg file into its cover")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", help="output file (.g6, .dgf or .dot); stdout when omitted")
    p.add_argument("--format", default=".dgf", choices=GRAPH_SUFFIXES, help="stdout format")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("family", help="instantiate a family at given parameters")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--out", help=".cvg for the voltage graph, .g6/.dgf/.dot for the cover")
    p.add_argument("--explain", action="store_true", help="print the admissibility condition checked")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("families", help="list the 25 families")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("enumerate-quotients", help="enumerate labelled quotient classes")
    p.add_argument("--max-vertices", type=int, default=3)
    p.add_argument("--out", help="directory for class_XX.cvg files and manifest.json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("quotient", help="cyclic quotients of a graph with few vertex orbits")
    p.add_argument("--in", dest="inp")
    p.add_argument("--name")
    p.add_argument("--max-orbits", type=int, default=3)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("check", help="criteria flags for a .cvg file")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("census", help="vertex-transitivity census of all families")
    p.add_argument("--max-order", type=int, help="default 48, or $CCV_MAX_ORDER")
    p.add_argument("--json", help="write records as JSON")
    p.add_argument("--all", action="store_true", help="keep isomorphic duplicates")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("analyze", help="girth, signatures and symmetry of a cubic graph")
    p.add_argument("--in", dest="inp")
    p.add_argument("--name")
    p.add_argument("--max-c", type=int, default=10)
    p.add_argument("--c", type=int, help="cycle length for the signature table (default: girth)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("convert", help="convert between .dgf, .g6, .dot and .cvg")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_convert)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, GraphError, formats.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
