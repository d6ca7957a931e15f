"""Command-line interface.

Machine-readable JSON goes to stdout, a short human summary to stderr.
Exit codes: 0 success, 2 verification failure or bad input, 3 inconclusive
search.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .degeneration import (DegenerationError, InconclusiveSearch,
                           closure_report, degenerate_to_F0,
                           degenerate_to_F1, in_sigma)
from .foliation import Foliation
from .invariants import (SearchIncomplete, flex_determinant,
                         search_invariant_curves)
from .parsing import ParseError, parse_form
from .portrait import (PortraitConfig, integrate_streamlines,
                       orthogonal_foliation, polylines_json, render_pair,
                       render_svg)
from .singular import milnor_fulton, report_json

EXIT_OK = 0
EXIT_VERIFICATION = 2
EXIT_INCONCLUSIVE = 3


def _emit(payload: dict, summary: str) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _load_foliation(args) -> Foliation:
    if args.catalog:
        return catalog.get(args.catalog)
    if args.form:
        return parse_form(args.form)
    raise SystemExit("one of --form or --catalog is required")


def _add_input_options(sub):
    sub.add_argument("--form", help="1-form expression, e.g. "
                     "'x^2*dx+(x+y^2)*(x*dy-y*dx)'")
    sub.add_argument("--catalog", help="catalog entry name (see `catalog`)")


def cmd_analyze(args) -> int:
    F = _load_foliation(args)
    from .group import isotropy_algebra
    from .invariants import invariant_lines
    rep = report_json(F)
    alg = isotropy_algebra(F)
    rep["isotropy"] = alg.to_json()
    try:
        flex = flex_determinant(F)
        rep["flex"] = flex.to_json()
        rep["in_exceptional_set"] = flex.reduced_is_constant()
        rep["invariant_lines"] = [l.to_json() for l in flex.invariant_lines()]
    except ValueError as e:
        rep["flex"] = {"error": str(e)}
    _emit(rep, "degree %d, %d singular orbit(s), Bezout %s, orbit dim %d"
          % (rep["degree"], len(rep["orbits"]),
             "ok" if rep["bezout_ok"] else "FAILED",
             alg.orbit_dimension))
    return EXIT_OK if rep["bezout_ok"] else EXIT_VERIFICATION


def cmd_classify(args) -> int:
    from .classify import (ClassificationError, classify_single_singularity,
                           recognize_normal_form)
    F = _load_foliation(args)
    direct = recognize_normal_form(F)
    if direct is not None and not args.full:
        _emit({"class": direct, "method": "direct recognition"},
              "recognized catalog form %s" % direct)
        return EXIT_OK
    try:
        cert = classify_single_singularity(F)
    except ClassificationError as e:
        _emit({"error": str(e)}, "classification failed: %s" % e)
        return EXIT_VERIFICATION
    _emit(cert.to_json(), "class %s via %d normalization steps"
          % (cert.class_id, len(cert.trace)))
    return EXIT_OK


def cmd_milnor(args) -> int:
    F = _load_foliation(args)
    if args.at:
        try:
            x0, y0 = (Fraction(v) for v in args.at.split(","))
        except ValueError:
            raise SystemExit("--at expects 'x0,y0' with rational entries")
        aff = F.affine(args.chart)
        mu = milnor_fulton(aff.P, aff.Q, (x0, y0))
        _emit({"point": [str(x0), str(y0)], "chart": args.chart, "mu": mu},
              "mu = %d at (%s, %s)" % (mu, x0, y0))
        return EXIT_OK
    rep = report_json(F)
    _emit(rep, "Bezout total %d = %d expected: %s"
          % (rep["milnor_total"], rep["bezout_expected"],
             "ok" if rep["bezout_ok"] else "FAILED"))
    return EXIT_OK if rep["bezout_ok"] else EXIT_VERIFICATION


def cmd_isotropy(args) -> int:
    from .group import isotropy_algebra
    F = _load_foliation(args)
    alg = isotropy_algebra(F)
    _emit(alg.to_json(), "isotropy dimension %d, orbit dimension %d"
          % (alg.dimension, alg.orbit_dimension))
    return EXIT_OK


def cmd_flex(args) -> int:
    F = _load_foliation(args)
    rep = flex_determinant(F)
    payload = rep.to_json()
    payload["in_exceptional_set"] = rep.reduced_is_constant()
    _emit(payload, "reduced flex locus %s"
          % ("empty" if rep.reduced_is_constant() else "nonempty"))
    return EXIT_OK


def cmd_invariant_curves(args) -> int:
    F = _load_foliation(args)
    try:
        curves = search_invariant_curves(F, args.max_degree)
    except SearchIncomplete as e:
        _emit({"incomplete": str(e)}, "search inconclusive: %s" % e)
        return EXIT_INCONCLUSIVE
    payload = {"max_degree": args.max_degree,
               "curves": [{"curve": c.text(), "cofactor": k.text()}
                          for c, k in curves]}
    _emit(payload, "%d invariant curve(s) of degree <= %d"
          % (len(curves), args.max_degree))
    return EXIT_OK


def cmd_degenerate(args) -> int:
    F = _load_foliation(args)
    try:
        if args.target == "f1":
            trace = degenerate_to_F1(F)
        elif args.target == "f0":
            if not args.point:
                raise SystemExit("--point 'x0,y0' is required for f0")
            x0, y0 = (Fraction(v) for v in args.point.split(","))
            trace = degenerate_to_F0(F, (x0, y0, Fraction(1)))
        else:  # auto
            try:
                trace = degenerate_to_F1(F)
            except (DegenerationError, InconclusiveSearch):
                orbits = [o for o in __import__(
                    "planefol.singular", fromlist=["singular_points"]
                ).singular_points(F) if o.mu == 1 and o.size == 1
                    and o.chart == "Z"]
                if not orbits:
                    raise DegenerationError(
                        "no rational simple point for the blow-down")
                p = orbits[0].point
                trace = degenerate_to_F0(F, (p[0], p[1], Fraction(1)))
    except InconclusiveSearch as e:
        _emit({"inconclusive": str(e)}, "inconclusive: %s" % e)
        return EXIT_INCONCLUSIVE
    except DegenerationError as e:
        _emit({"error": str(e)}, "degeneration failed: %s" % e)
        return EXIT_VERIFICATION
    _emit(trace.to_json(), "limit recognized as %s (valuation %d)"
          % (trace.recognized, trace.valuation))
    return EXIT_OK


def cmd_portrait(args) -> int:
    F = _load_foliation(args)
    cfg = PortraitConfig()
    if args.config:
        with open(args.config) as fh:
            cfg = PortraitConfig.from_dict(json.load(fh))
    if args.orthogonal:
        doc = render_pair(F, orthogonal_foliation(F), cfg,
                          ("form", "orthogonal"))
    else:
        doc = render_svg(integrate_streamlines(F, cfg), cfg,
                         args.catalog or None)
    with open(args.out, "w") as fh:
        fh.write(doc)
    payload = {"out": args.out, "config": {
        k: getattr(cfg, k) for k in cfg.__dataclass_fields__}}
    if args.dump_polylines:
        pls = integrate_streamlines(F, cfg)
        with open(args.dump_polylines, "w") as fh:
            json.dump(polylines_json(pls), fh)
        payload["polylines"] = args.dump_polylines
    _emit(payload, "portrait written to %s" % args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if not args.verify:
        entries = []
        for name in catalog.names():
            F = catalog.get(name)
            entries.append({"name": name, "degree": F.degree,
                            "form": F.affine("Z").text()})
        _emit({"entries": entries}, "%d catalog entries" % len(entries))
        return EXIT_OK
    progress = (lambda m: print("  " + m, file=sys.stderr)) \
        if args.verbose else None
    results = catalog.verify_catalog(progress)
    bad = [r for r in results if not r["ok"]]
    _emit({"checks": results, "failed": len(bad)},
          "%d checks, %d failed" % (len(results), len(bad)))
    return EXIT_OK if not bad else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="planefol",
        description="exact computation with plane projective foliations")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", help="full report: singular orbits, "
                       "Milnor numbers, jets, isotropy, flex")
    _add_input_options(s)
    s.set_defaults(fn=cmd_analyze)

    s = sub.add_parser("classify", help="single-singularity classification")
    _add_input_options(s)
    s.add_argument("--full", action="store_true",
                   help="run the normalization pipeline even for catalog "
                   "forms")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("milnor", help="Milnor numbers (per orbit, or at a "
                       "point with --at)")
    _add_input_options(s)
    s.add_argument("--at", help="rational point 'x0,y0'")
    s.add_argument("--chart", default="Z", choices=["Z", "Y", "X"])
    s.set_defaults(fn=cmd_milnor)

    s = sub.add_parser("isotropy", help="isotropy Lie algebra")
    _add_input_options(s)
    s.set_defaults(fn=cmd_isotropy)

    s = sub.add_parser("flex", help="flex determinant and invariant lines")
    _add_input_options(s)
    s.set_defaults(fn=cmd_flex)

    s = sub.add_parser("invariant-curves", help="search invariant curves")
    _add_input_options(s)
    s.add_argument("--max-degree", type=int, default=3)
    s.set_defaults(fn=cmd_invariant_curves)

    s = sub.add_parser("degenerate", help="one-parameter-subgroup limits")
    _add_input_options(s)
    s.add_argument("--target", choices=["f1", "f0", "auto"], default="auto")
    s.add_argument("--point", help="rational singular point 'x0,y0' for f0")
    s.set_defaults(fn=cmd_degenerate)

    s = sub.add_parser("portrait", help="render a phase portrait to SVG")
    _add_input_options(s)
    s.add_argument("--out", required=True, help="output SVG path")
    s.add_argument("--config", help="JSON file of PortraitConfig keys")
    s.add_argument("--orthogonal", action="store_true",
                   help="render the form and its orthogonal side by side")
    s.add_argument("--dump-polylines", help="also dump polylines as JSON")
    s.set_defaults(fn=cmd_portrait)

    s = sub.add_parser("catalog", help="list or verify the catalog")
    s.add_argument("--verify", action="store_true",
                   help="machine-verify every catalog annotation")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(fn=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        print("parse error at %s" % e, file=sys.stderr)
        return EXIT_VERIFICATION
    except KeyError as e:
        print("error: %s" % e.args[0], file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
