"""Command-line entry point: ``cremona <subcommand> FILE``.

Exit codes: 0 when a verdict (or other result) was produced, 2 for invalid
input, 1 for internal errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import CremonaError, GroupTooLarge, NeedsExtension, NoWitness, SchemaError

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2


def _tag(t):
    return None if t is None else str(t)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)


def decision_report(doc, decision) -> dict:
    order, fam = decision.group_summary if decision.group_summary else (None, None)
    return {
        "surface": str(doc.surface),
        "decision": decision.verdict,
        "group": {"order": order, "family": _tag(fam)},
        "reason": {"rule": decision.rule.value, "citation": decision.citation},
        "witness": None if decision.witness is None else [s.to_record() for s in decision.witness],
        "witness_note": decision.witness_note,
        "details": decision.details,
    }


def _set_cap(doc):
    if doc.cap is not None:
        import os
        os.environ["CREMONA_CAP"] = str(doc.cap)


def run_decide(doc) -> tuple:
    from .decider import INVALID, decide
    d = decide(doc.surface, doc.build_generators())
    return decision_report(doc, d), (EXIT_INVALID if d.verdict == INVALID else EXIT_OK)


def run_witness(doc) -> tuple:
    from .decider import INVALID, decide, render_witness
    d = decide(doc.surface, doc.build_generators())
    report = decision_report(doc, d)
    try:
        report["text"] = render_witness(d)
    except NoWitness as exc:
        report["text"] = None
        report["error"] = {"type": "NoWitness", "message": str(exc)}
    return report, (EXIT_INVALID if d.verdict == INVALID else EXIT_OK)


def _group_of(doc):
    """(GroupTable, extra info) for the document's generators."""
    kind = doc.surface.kind
    gens = doc.build_generators()
    if kind == "Hirzebruch":
        from .moebius import closure, klein_classify
        G = closure(gens)
        return G, {"klein_class": str(klein_classify(G))}
    if kind == "Quadric":
        from .quadric import analyze_rulings
        A = analyze_rulings(gens)
        info = {"rank": A.rank, "kernel_order": A.kernel.order,
                "factor_classes": [str(c) for c in A.factor_classes]}
        return A.group, info
    if kind == "DP6":
        from .delpezzo import dp6_analyze
        A = dp6_analyze(gens)
        return A.group, {"hexagon_image": A.hexagon_label, "torus_order": len(A.torus_part),
                         "minimal": A.minimal}
    if kind == "DP5":
        from .delpezzo import DP5Group, dp5_analyze
        g = DP5Group.from_perms(gens)
        return g.table, {"minimal": dp5_analyze(g)[1]}
    if kind == "P2":
        from .p2maps import p2_closure
        if not gens:
            return None, {}
        return p2_closure(gens), {}
    return None, {}


def run_classify(doc) -> tuple:
    from .groups import recognize_family
    G, info = _group_of(doc)
    if G is None:
        return {"surface": str(doc.surface), "group": None, "details": info}, EXIT_OK
    return {"surface": str(doc.surface),
            "group": {"order": G.order, "family": str(recognize_family(G))},
            "details": info}, EXIT_OK


def run_goursat(doc) -> tuple:
    if doc.surface.kind != "Quadric":
        raise SchemaError("surface.kind", "goursat needs a quadric document")
    from .groups import recognize_family
    from .moebius import classify_by_orders
    from collections import Counter
    from .quadric import analyze_rulings
    A = analyze_rulings(doc.build_generators())
    d = A.goursat

    def cls(G, H):
        return str(classify_by_orders(len(H), Counter(G.element_order(h) for h in H)))
    return {
        "surface": str(doc.surface),
        "rank": A.rank,
        "decomposed": "group" if A.rank == 2 else "kernel of the swap character",
        "G1": {"order": d.G1.order, "family": str(recognize_family(d.G1))},
        "G2": {"order": d.G2.order, "family": str(recognize_family(d.G2))},
        "H1": {"order": len(d.H1), "class": cls(d.G1, d.H1)},
        "H2": {"order": len(d.H2), "class": cls(d.G2, d.H2)},
        "Q": {"order": d.Q.order, "family": str(recognize_family(d.Q))},
        "order_identity": d.order == (A.group.order if A.rank == 2 else A.kernel.order),
    }, EXIT_OK


def run_orbits(doc, points_json: str) -> tuple:
    try:
        pts = json.loads(points_json)
    except json.JSONDecodeError as exc:
        raise SchemaError("--points", f"invalid JSON: {exc.msg}") from exc
    if not isinstance(pts, list):
        raise SchemaError("--points", "expected a list of points")
    from .schema import literal
    fld = doc.field
    kind = doc.surface.kind
    out = []
    if kind == "Hirzebruch":
        from .moebius import ProjPoint, closure, orbit
        G = closure(doc.build_generators())
        for i, p in enumerate(pts):
            if not (isinstance(p, list) and len(p) == 2):
                raise SchemaError(f"--points[{i}]", "expected [x, y]")
            q = [literal(fld, c, f"--points[{i}][{j}]") for j, c in enumerate(p)]
            if all(c.is_zero() for c in q):
                raise SchemaError(f"--points[{i}]", "[0:0] is not a point")
            out.append({"point": p, "length": len(orbit(G, ProjPoint(*q)))})
    elif kind == "Quadric":
        from .moebius import ProjPoint
        from .quadric import QuadricPoint, orbit_on_quadric, quadric_closure
        G = quadric_closure(doc.build_generators())
        for i, p in enumerate(pts):
            if not (isinstance(p, list) and len(p) == 2 and all(isinstance(c, list) and len(c) == 2 for c in p)):
                raise SchemaError(f"--points[{i}]", "expected [[x0, x1], [y0, y1]]")
            a = [literal(fld, c, f"--points[{i}][0][{j}]") for j, c in enumerate(p[0])]
            b = [literal(fld, c, f"--points[{i}][1][{j}]") for j, c in enumerate(p[1])]
            if all(c.is_zero() for c in a) or all(c.is_zero() for c in b):
                raise SchemaError(f"--points[{i}]", "zero coordinates")
            out.append({"point": p, "length": len(orbit_on_quadric(G, QuadricPoint(ProjPoint(*a), ProjPoint(*b))))})
    elif kind == "DP6":
        from .delpezzo import DP6Point, dp6_act, dp6_closure
        from .errors import OffSurface
        G = dp6_closure(doc.build_generators())
        for i, p in enumerate(pts):
            try:
                x = [literal(fld, c, f"--points[{i}][0][{j}]") for j, c in enumerate(p[0])]
                y = [literal(fld, c, f"--points[{i}][1][{j}]") for j, c in enumerate(p[1])]
                pt = DP6Point.make(x, y, fld)
            except (TypeError, IndexError, OffSurface, ValueError) as exc:
                raise SchemaError(f"--points[{i}]", str(exc) or "expected [[x0,x1,x2],[y0,y1,y2]]") from exc
            out.append({"point": p, "length": len({dp6_act(g, pt) for g in G.elements})})
    else:
        raise SchemaError("surface.kind", f"orbits is not available for {kind}")
    return {"surface": str(doc.surface), "orbits": out}, EXIT_OK


def run_verify_map(obj) -> tuple:
    from .p2maps import verify_p2_conjugation
    from .schema import parse_map_document
    md = parse_map_document(obj)
    f, c, t = md.maps()
    rep = verify_p2_conjugation(f, c, t, md.options.get("trials", 50), md.options.get("seed", 0))
    return {
        "holds": bool(rep),
        "forward": rep.forward,
        "backward": rep.backward,
        "ordering": rep.ordering,
        "checked": rep.checked,
        "skipped": rep.skipped,
        "composite_degree_bound": rep.composite_degree_bound,
    }, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cremona", description="Linearizability of finite groups acting on rational surfaces.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (("decide", "verdict with rule and witness"),
                           ("classify", "group order and family"),
                           ("goursat", "Goursat data of a quadric group"),
                           ("witness", "human-readable witness chain"),
                           ("verify-map", "check a conjugation of plane rational maps")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file", help="JSON document ('-' for stdin)")
    sp = sub.add_parser("orbits", help="orbit lengths of given points")
    sp.add_argument("file")
    sp.add_argument("--points", required=True, help="JSON list of points")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(command: str, text: str, points: str | None = None) -> tuple:
    """(report dict, exit code) for one subcommand on one document text."""
    from .schema import parse_input
    try:
        if command == "verify-map":
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise SchemaError("$", f"invalid JSON: {exc.msg}") from exc
            return run_verify_map(obj)
        doc = parse_input(text)
        _set_cap(doc)
        if command == "decide":
            return run_decide(doc)
        if command == "classify":
            return run_classify(doc)
        if command == "goursat":
            return run_goursat(doc)
        if command == "witness":
            return run_witness(doc)
        if command == "orbits":
            return run_orbits(doc, points or "[]")
        raise SchemaError("command", f"unknown subcommand {command!r}")
    except SchemaError as exc:
        return {"error": {"type": type(exc).__name__, "path": exc.path, "reason": exc.reason}}, EXIT_INVALID
    except NeedsExtension as exc:
        return {"error": {"type": "NeedsExtension", "multiplier": exc.multiplier,
                          "suggested_conductor": (exc.conductor or 1) * exc.multiplier,
                          "message": str(exc)}}, EXIT_INVALID
    except GroupTooLarge as exc:
        return {"error": {"type": "GroupTooLarge", "cap": exc.cap, "message": str(exc)}}, EXIT_INVALID
    except CremonaError as exc:
        return {"error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_INVALID


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _read(args.file)
    except OSError as exc:
        print(_dump({"error": {"type": "IOError", "message": str(exc)}}))
        return EXIT_INVALID
    try:
        report, code = run(args.command, text, getattr(args, "points", None))
    except Exception as exc:  # internal failure: report and exit 1
        print(_dump({"error": {"type": "Internal", "message": f"{type(exc).__name__}: {exc}"}}))
        return EXIT_INTERNAL
    print(_dump(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
