"""Batch command-line front end.

Subcommands: verify, search, bounds, entropy, polycert, incidence, selftest.
Output is deterministic byte-for-byte for identical inputs and flags.
Exit codes: 0 success, 2 validation error, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import formats
from .entropy import (check_entropic_bound, check_recursion, min_entropy,
                      norm_bound_check)
from .errors import FlabError, UnsupportedFormat
from .furstenberg import (FurstenbergInstance, bound_table, is_furstenberg,
                          search_extremal, trivial_construction)
from .geometry import PointSet, qbinomial
from .gf import field_build
from .incidence import (FlatFamily, count_incidences, haemers_check,
                        kakeya_becks_census, poor_flat_census,
                        contained_subflats)
from .polymethod import (find_vanishing_poly, multiplicity,
                         NoSolutionCertificate, sz_mult_audit)

DEFAULT_BUDGET = int(os.environ.get("FLAB_BUDGET", 10_000_000))


def _frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _jsonable(v):
    if isinstance(v, Fraction):
        return _frac_str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, frozenset):
        return [_jsonable(x) for x in sorted(v)]
    return v


def emit_report(report: dict, fmt: str, rows_key: str | None = None) -> str:
    """Render a report dict; rows_key names a list-of-dicts table for CSV."""
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        rows = report.get(rows_key or "rows")
        if not isinstance(rows, list):
            raise UnsupportedFormat("this report has no tabular form")
        cols = list(rows[0].keys()) if rows else []
        out = [",".join(cols)]
        for r in rows:
            out.append(",".join(str(_jsonable(r[c])) for c in cols))
        return "\n".join(out) + "\n"
    if fmt == "text":
        out = []
        for k, v in report.items():
            if isinstance(v, list) and v and isinstance(v[0], dict):
                out.append(f"{k}:")
                for r in v:
                    out.append("  " + "  ".join(f"{a}={_jsonable(b)}"
                                                for a, b in r.items()))
            else:
                out.append(f"{k} = {_jsonable(v)}")
        return "\n".join(out) + "\n"
    raise UnsupportedFormat(f"unknown format {fmt!r}")


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _integer_root(x: int, k: int) -> int | None:
    if x < 0:
        return None
    r = round(x ** (1 / k)) if x else 0
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == x:
            return cand
    return None


def _row_value(r) -> str | None:
    """Exact row value when representable as a rational, else None."""
    root = getattr(r, "root", 1)
    num = _integer_root(r.rhs_num, root)
    den = _integer_root(r.rhs_den, root)
    if num is None or den is None:
        return None
    return _frac_str(Fraction(num, den))


def _cmd_bounds(args) -> int:
    F = field_build(args.p, args.e)
    inst = FurstenbergInstance(field=F, n=args.n, k=args.k, m=args.m)
    eps = Fraction(args.epsilon) if args.epsilon else None
    report = bound_table(inst, epsilon=eps)
    rows = [{
        "source": r.source,
        "kind": r.kind,
        "rhs_numerator": r.rhs_num,
        "rhs_denominator": r.rhs_den,
        "value": _row_value(r),
        "exponent_note": r.exponent_note,
        "applicable": r.applicable,
    } for r in report.rows]
    _write(args, emit_report({
        "q": F.q, "n": args.n, "k": args.k, "m": args.m, "rows": rows,
    }, args.format))
    return 0


def _cmd_verify(args) -> int:
    with open(args.points) as fh:
        S = formats.parse_pointset(fh.read())
    ok, payload = is_furstenberg(S, args.k, args.m, budget=args.budget)
    if ok:
        wit = [{
            "direction": formats.serialize_flat(
                S.field, payload.assignment[d]).split(";")[0].strip(),
            "flat": formats.serialize_flat(S.field, payload.assignment[d]),
            "count": payload.coverage[d],
        } for d in sorted(payload.assignment,
                          key=lambda d: d.basis)]
        _write(args, emit_report({"ok": True, "size": len(S),
                                  "witnesses": wit},
                                 args.format, rows_key="witnesses"))
        return 0
    _write(args, emit_report({
        "ok": False, "size": len(S),
        "failing_direction": " , ".join(
            formats._point_str(S.field, r) for r in payload.basis),
    }, args.format))
    return 0


def _cmd_search(args) -> int:
    F = field_build(args.p, args.e)
    inst = FurstenbergInstance(field=F, n=args.n, k=args.k, m=args.m)
    res = search_extremal(inst, budget=args.budget)
    report = {
        "q": F.q, "n": args.n, "k": args.k, "m": args.m,
        "exact": res.exact, "lower": res.lower, "upper": res.upper,
    }
    if res.witness is not None:
        report["witness"] = [formats._point_str(F, p)
                             for p in res.witness.sorted()]
    _write(args, emit_report(report, args.format))
    return 0


def _cmd_entropy(args) -> int:
    with open(args.dist) as fh:
        dist = formats.parse_distribution(fh.read())
    ev = min_entropy(dist)
    report = {
        "n": dist.n, "q": dist.field.q, "total": dist.total,
        "max_weight": ev.max_weight,
        "entropy": f"H = log_q({ev.total}/{ev.max_weight})",
    }
    if args.check == "bound":
        r = check_entropic_bound(dist, args.k, budget=args.budget)
        report.update({"k": args.k, "ok": r.ok, "lhs": r.lhs, "rhs": r.rhs,
                       "margin": r.margin})
    elif args.check == "recursion":
        r = check_recursion(dist, args.k, budget=args.budget)
        report.update({
            "k": args.k,
            "composed_max_weight": r.composed.max_weight,
            "direct_max_weight": r.direct.max_weight,
            "composed_le_direct": r.composed_le_direct,
            "composed_ok": r.composed_ok, "direct_ok": r.direct_ok,
        })
    _write(args, emit_report(report, args.format))
    return 0


def _cmd_polycert(args) -> int:
    F = field_build(args.p, args.e)
    if args.poly:
        with open(args.poly) as fh:
            P = formats.parse_polynomial(F, args.n, fh.read())
        audit = sz_mult_audit(P, list(F.elements()))
        _write(args, emit_report({
            "degree": P.degree, "terms": len(P.terms),
            "mult_sum": audit.sum, "bound": audit.bound, "ok": audit.ok,
        }, args.format))
        return 0
    with open(args.targets) as fh:
        TF, n, targets = formats.parse_targets(fh.read())
    if TF != F or n != args.n:
        raise FlabError("targets file field/dimension mismatch")
    result = find_vanishing_poly(F, n, targets, args.degree)
    if isinstance(result, NoSolutionCertificate):
        _write(args, emit_report({
            "found": False, "equations": result.equations,
            "unknowns": result.unknowns, "rank": result.rank,
        }, args.format))
        return 0
    verified = all(multiplicity(result, x) >= N for x, N in targets.items())
    _write(args, emit_report({
        "found": True, "degree": result.degree, "verified": verified,
        "polynomial": formats.serialize_polynomial(result).rstrip("\n"),
    }, args.format))
    return 0


def _cmd_incidence(args) -> int:
    with open(args.points) as fh:
        S = formats.parse_pointset(fh.read())
    if args.check in ("count", "haemers"):
        with open(args.flats) as fh:
            L = formats.parse_flat_family(fh.read())
        if args.check == "count":
            _write(args, emit_report(
                {"incidences": count_incidences(S, L)}, args.format))
            return 0
        r = haemers_check(S, L)
        _write(args, emit_report({
            "incidences": r.incidences, "rhs": r.rhs,
            "radicand": r.radicand, "ok": r.ok,
        }, args.format))
        return 0
    if args.check == "poor":
        r = poor_flat_census(S, args.l, Fraction(args.delta),
                             budget=args.budget)
        _write(args, emit_report({
            "poor_flats": r.incidences, "bound": r.rhs, "ok": r.ok,
            "threshold": r.extra["threshold"],
        }, args.format))
        return 0
    if args.check == "becks":
        r = kakeya_becks_census(S, args.k, Fraction(args.delta),
                                budget=args.budget)
        _write(args, emit_report({
            "rich_flats": r.incidences, "bound": r.rhs, "ok": r.ok,
            "m": r.extra["m"], "hypothesis_met": r.extra["hypothesis_met"],
        }, args.format))
        return 0
    if args.check == "subflats":
        with open(args.flats) as fh:
            L = formats.parse_flat_family(fh.read())
        r = contained_subflats(L, args.l, budget=args.budget)
        _write(args, emit_report({
            "contained": r.incidences, "bound": r.rhs, "ok": r.ok,
            "k_factor": r.extra["k_factor"],
        }, args.format))
        return 0
    raise FlabError(f"unknown incidence check {args.check!r}")


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest
    ok = run_selftest(sys.stdout)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flab",
                                 description="Exact finite-geometry lab: "
                                 "Furstenberg sets, entropy, incidences.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, field=True):
        p.add_argument("--format", choices=["json", "csv", "text"],
                       default="text")
        p.add_argument("--output", "-o", default=None)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for compatibility; results are "
                       "thread-count independent")
        if field:
            p.add_argument("--p", type=int, required=True)
            p.add_argument("--e", type=int, default=1)

    p = sub.add_parser("bounds", help="evaluate every bound formula")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--epsilon", default=None,
                   help="exact rational, e.g. 1/10")
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("verify", help="verify the Furstenberg property")
    common(p, field=False)
    p.add_argument("--points", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("search", help="exact extremal search K(q,n,k,m)")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("entropy", help="min-entropy projections and checks")
    common(p, field=False)
    p.add_argument("--dist", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--check", choices=["bound", "recursion", "none"],
                   default="bound")
    p.set_defaults(fn=_cmd_entropy)

    p = sub.add_parser("polycert", help="polynomial certificates and audits")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly", default=None)
    p.add_argument("--targets", default=None)
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(fn=_cmd_polycert)

    p = sub.add_parser("incidence", help="incidence counts and censuses")
    common(p, field=False)
    p.add_argument("--points", required=True)
    p.add_argument("--flats", default=None)
    p.add_argument("--check", required=True,
                   choices=["count", "haemers", "poor", "becks", "subflats"])
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--delta", default="1/2")
    p.set_defaults(fn=_cmd_incidence)

    p = sub.add_parser("selftest", help="run the invariant battery")
    common(p, field=False)
    p.set_defaults(fn=_cmd_selftest)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except FlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
