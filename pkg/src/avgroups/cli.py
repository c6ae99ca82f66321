"""Command line interface: ``avgroups <subcommand> ...``.

Polynomials are ascending integer coefficients separated by commas
(``9,0,0,0,1`` is t^4 + 9).  Groups are comma separated orders of cyclic
factors (``2,6`` is Z/2 + Z/6); any cyclic decomposition is accepted and
normalised to invariant factors.

Exit codes: 0 success (a "no" verdict is still success), 2 invalid input,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from collections import defaultdict

from . import curves
from .abgroups import GroupParseError, GroupShape, local_exponents
from .classify import ResourceCapExceeded, classify_group, enumerate_admissible
from .exactpoly import IntPolynomial, PolynomialParseError
from .polygons import hodge_polygon, newton_polygon_at_one
from .tatemod import OracleCapExceeded, default_depth, enumerate_stable_lattices
from .weil import WeilError, detect_shape, validate_weil

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3

POLY_HELP = "ascending integer coefficients, e.g. 9,0,0,0,1 for t^4+9"
GROUP_HELP = "orders of cyclic factors, e.g. 2,6 for Z/2+Z/6"


class InputError(ValueError):
    pass


def _parse_poly(text, flag="--poly"):
    try:
        return IntPolynomial.parse(text)
    except PolynomialParseError as exc:
        raise InputError(f"{flag}: {exc}") from exc


def _parse_group(text):
    try:
        return GroupShape.parse(text)
    except (GroupParseError, ValueError) as exc:
        raise InputError(f"--group: {exc}") from exc


def _parse_ints(text, flag):
    out = []
    pos = 0
    for field in text.split(","):
        token = field.strip()
        if not token.isdigit():
            raise InputError(f"{flag}: bad entry {token!r} (at position {pos})")
        out.append(int(token))
        pos += len(field) + 1
    return out


def _weil(args):
    f = _parse_poly(args.poly)
    try:
        return validate_weil(f, args.q)
    except WeilError as exc:
        raise InputError(f"not a Weil polynomial: {exc}") from exc


# -- subcommands: each returns (json_payload, csv_header, csv_rows) -------------

def cmd_validate(args):
    f = _parse_poly(args.poly)
    try:
        W = validate_weil(f, args.q)
        out = {"valid": True, "g": W.g, "reason": ""}
    except WeilError as exc:
        out = {"valid": False, "g": f.degree // 2 if f.degree > 0 else 0, "reason": str(exc)}
    return out, ["valid", "g", "reason"], [[out["valid"], out["g"], out["reason"]]]


def cmd_shape(args):
    W = _weil(args)
    shape = detect_shape(W)
    parts = [{"poly": g.to_text(), "mult": e} for g, e in shape.parts()]
    out = {"case": shape.case, "parts": parts}
    rows = [[shape.case, p["poly"], p["mult"]] for p in parts]
    return out, ["case", "poly", "mult"], rows


def cmd_classify(args):
    W = _weil(args)
    G = _parse_group(args.group)
    v = classify_group(W, G)
    primes = [{"ell": r.ell, "case": r.case, "ok": r.ok, "detail": r.detail} for r in v.per_prime]
    out = {"verdict": v.outcome, "primes": primes}
    rows = [[v.outcome, p["ell"], p["case"], p["ok"], p["detail"]] for p in primes]
    return out, ["verdict", "ell", "case", "ok", "detail"], rows


def cmd_enumerate(args):
    W = _weil(args)
    yes, unknown = enumerate_admissible(W)
    out = {
        "yes": [list(G.invariant_factors) for G in yes],
        "unknown": [list(G.invariant_factors) for G in unknown],
    }
    rows = [["yes", G.to_text()] for G in yes] + [["unknown", G.to_text()] for G in unknown]
    return out, ["verdict", "group"], rows


def _polygon_payload(poly):
    out = {"vertices": poly.to_json()}
    return out, ["x", "y"], [[x, y] for x, y in out["vertices"]]


def cmd_polygon_newton(args):
    if args.ell < 2:
        raise InputError("--ell must be a prime")
    f = _parse_poly(args.poly)
    if f.is_zero() or f(1) == 0:
        raise InputError("--poly: need f(1) != 0")
    return _polygon_payload(newton_polygon_at_one(f, args.ell))


def cmd_polygon_hodge(args):
    return _polygon_payload(hodge_polygon(_parse_ints(args.exponents, "--exponents")))


def cmd_oracle_lattice(args):
    W = _weil(args)
    shapes = enumerate_stable_lattices(W.f, args.ell, depth=args.depth)
    depth = args.depth if args.depth is not None else default_depth(W.f, args.ell)
    out = {"shapes": [list(e) for e in shapes], "depth": depth}
    return out, ["exponents", "depth"], [[",".join(map(str, e)), depth] for e in shapes]


def _curve_records(args):
    if args.genus == 1:
        return curves.ec_scan(args.q)
    models = None
    if args.sample is not None:
        rng = random.Random(args.seed)
        every = list(curves.monic_quintics(args.q))
        models = sorted(rng.sample(every, min(args.sample, len(every))))
    return curves.genus2_scan(args.q, models)


def crosscheck(records, genus):
    """Soundness for every record; for genus 1 also completeness of each class."""
    mismatches = []
    observed = defaultdict(set)
    for W, G, _ in records:
        observed[W].add(G)
        v = classify_group(W, G)
        if v.outcome != "yes":
            mismatches.append({"poly": W.f.to_text(), "group": G.to_text(), "issue": f"verdict {v.outcome}"})
    if genus == 1:
        for W in sorted(observed, key=lambda W: W.f.coeffs):
            yes, unknown = enumerate_admissible(W)
            for G in sorted(set(yes) - observed[W]):
                mismatches.append({"poly": W.f.to_text(), "group": G.to_text(), "issue": "admissible but not observed"})
            for G in unknown:
                mismatches.append({"poly": W.f.to_text(), "group": G.to_text(), "issue": "unknown verdict"})
    return mismatches


def cmd_oracle_curves(args):
    allowed = curves.EC_FIELDS if args.genus == 1 else curves.GENUS2_FIELDS
    if args.q not in allowed:
        raise InputError(f"--q {args.q} unsupported for genus {args.genus}; choose from {allowed}")
    records = _curve_records(args)
    items = [{"poly": W.f.to_text(), "group": G.to_text(), "count": c} for W, G, c in records]
    out = {"curves": items}
    rows = [[i["poly"], i["group"], i["count"]] for i in items]
    if args.crosscheck:
        out["mismatches"] = crosscheck(records, args.genus)
        rows += [[m["poly"], m["group"], "mismatch: " + m["issue"]] for m in out["mismatches"]]
    return out, ["poly", "group", "count"], rows


def cmd_report(args):
    from .report import render

    W = _weil(args)
    yes, unknown = enumerate_admissible(W)
    paths = render(W, yes, unknown, args.figures)
    header = ["group", "verdict", "ell", "exponents"]
    rows = []
    for verdict, groups in (("yes", yes), ("unknown", unknown)):
        for G in groups:
            for ell in G.primes():
                e = local_exponents(G, ell, W.f.degree)
                rows.append([G.to_text(), verdict, ell, ",".join(map(str, e))])
    out = {"yes": [G.to_text() for G in yes], "unknown": [G.to_text() for G in unknown],
           "figures": paths}
    return out, header, rows


# -- driver ----------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="avgroups",
        description="Groups of points of abelian varieties over finite fields.",
        epilog=f"Polynomial grammar: {POLY_HELP}.  Group grammar: {GROUP_HELP}.",
    )
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    # accept --format after the subcommand as well
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    def weil_args(p):
        p.add_argument("--q", type=int, required=True, help="field size (prime power)")
        p.add_argument("--poly", required=True, help=POLY_HELP)

    p = sub.add_parser("validate", parents=[common], help="check the Weil conditions")
    weil_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("shape", parents=[common], help="squarefree shape of a Weil polynomial")
    weil_args(p)
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("classify", parents=[common], help="verdict for one group")
    weil_args(p)
    p.add_argument("--group", required=True, help=GROUP_HELP)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", parents=[common], help="all admissible groups of an isogeny class")
    weil_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("polygon", help="Newton or Hodge polygons")
    psub = p.add_subparsers(dest="kind", required=True)
    pn = psub.add_parser("newton", parents=[common], help="Newton polygon of f(1-t)")
    pn.add_argument("--ell", type=int, required=True)
    pn.add_argument("--poly", required=True, help=POLY_HELP)
    pn.set_defaults(func=cmd_polygon_newton)
    ph = psub.add_parser("hodge", parents=[common], help="Hodge polygon of an exponent vector")
    ph.add_argument("--exponents", required=True, help="e.g. 0,1,1,2")
    ph.set_defaults(func=cmd_polygon_hodge)

    p = sub.add_parser("oracle", help="brute-force oracles")
    osub = p.add_subparsers(dest="kind", required=True)
    ol = osub.add_parser("lattice", parents=[common], help="Frobenius-stable lattice enumeration")
    weil_args(ol)
    ol.add_argument("--ell", type=int, required=True)
    ol.add_argument("--depth", type=int, default=None)
    ol.set_defaults(func=cmd_oracle_lattice)
    oc = osub.add_parser("curves", parents=[common], help="exhaustive curve and Jacobian scans")
    oc.add_argument("--q", type=int, required=True)
    oc.add_argument("--genus", type=int, choices=(1, 2), required=True)
    oc.add_argument("--crosscheck", action="store_true")
    oc.add_argument("--sample", type=int, default=None,
                    help="genus 2: scan only this many monic quintics")
    oc.add_argument("--seed", type=int, default=0)
    oc.set_defaults(func=cmd_oracle_curves)

    p = sub.add_parser("report", parents=[common], help="admissible groups as CSV plus Newton/Hodge figures")
    weil_args(p)
    p.add_argument("--figures", required=True, help="directory for PNG files")
    p.set_defaults(func=cmd_report)
    return ap


def render_output(payload, header, rows, fmt):
    if fmt == "json":
        return json.dumps(payload, sort_keys=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def run(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    fmt = getattr(args, "format", "json")
    try:
        payload, header, rows = args.func(args)
    except (InputError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (ResourceCapExceeded, OracleCapExceeded) as exc:
        stderr.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    stdout.write(render_output(payload, header, rows, fmt))
    return EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
