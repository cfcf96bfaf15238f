"""Command-line front end.

    egfverify expand --family tangent --order 5 [--r 2] [--k 2] [--format json|csv|text]
    egfverify eval   --family hermite --n 2 --x 1/2 --y 3
    egfverify verify (--case T1a | --all) --order 12 [--format json|text] [--out FILE]
    egfverify report --order 12 [--format text|json|csv] [--out FILE]

Exit codes: 0 success, 1 a mandatory identity failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .arith import MultiPoly, render, to_rational
from .errors import EgfError, UnknownCase, UnknownFamily
from .families import FAMILIES, FamilySpec, build, extract_polynomial, family_info
from .identities import register_paper_catalog, report_json, report_text, run_all

EXPONENT_KEYS = ("ex", "ey", "eu", "el", "es", "ev")


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"expected p/q or an integer, got {text!r}") from None


def term_json(mono, c: Fraction) -> dict:
    out = {key: e for key, e in zip(EXPONENT_KEYS[:4], mono[:4])}
    # s and v never occur in family tables; keep the four-exponent schema unless needed
    for key, e in zip(EXPONENT_KEYS[4:], mono[4:]):
        if e:
            out[key] = e
    out["num"] = str(c.numerator)
    out["den"] = str(c.denominator)
    return out


def poly_from_terms(terms) -> MultiPoly:
    """Rebuild a polynomial from the JSON term list."""
    out = {}
    for t in terms:
        mono = tuple(int(t.get(key, 0)) for key in EXPONENT_KEYS)
        out[mono] = Fraction(int(t["num"]), int(t["den"]))
    return MultiPoly(out)


def table_from_json(text: str):
    """Parse an ``expand`` JSON table into ``[(n, MultiPoly), ...]``."""
    data = json.loads(text)
    return [(row["n"], poly_from_terms(row["terms"])) for row in data["rows"]]


def _spec_from_args(args) -> FamilySpec:
    info = family_info(args.family)
    k = args.k
    if info.is_poly and k is None:
        k = 1
    if not info.is_poly and k is not None:
        raise UsageError(f"--k is only valid for poly-families, not {args.family}")
    return FamilySpec(args.family, args.r, k, args.order)


def expand_table(spec: FamilySpec) -> dict:
    series = build(spec)
    params = {"r": spec.order_r}
    if spec.polylog_k is not None:
        params["k"] = spec.polylog_k
    rows = []
    for n, p in enumerate(series.coeffs):
        rows.append({"n": n, "text": render(p),
                     "terms": [term_json(m, c) for m, c in p.items()]})
    return {"family": spec.family, "params": params, "order": spec.truncation, "rows": rows}


def format_table(table: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(table, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", *EXPONENT_KEYS[:4], "num", "den"])
        for row in table["rows"]:
            for t in row["terms"]:
                writer.writerow([row["n"], t["ex"], t["ey"], t["eu"], t["el"], t["num"], t["den"]])
        return buf.getvalue()
    width = len(str(table["order"]))
    return "".join(f"{row['n']:>{width}}  {row['text']}\n" for row in table["rows"])


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_expand(args) -> int:
    spec = _spec_from_args(args)
    _emit(format_table(expand_table(spec), args.format), args.out)
    return 0


def cmd_eval(args) -> int:
    spec = _spec_from_args(argparse.Namespace(**{**vars(args), "order": args.n}))
    p = extract_polynomial(build(spec), args.n)
    value = p.evaluate({"x": args.x, "y": args.y, "u": args.u, "l": args.l})
    _emit(f"{value}\n", None)
    return 0


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["case", "params", "check", "status", "n", "monomial", "lhs", "rhs"])
    for entry in report["cases"]:
        for res in entry["results"]:
            params = json.dumps(res["params"], sort_keys=True)
            for check, outcome in [("printed", res)] + [(v["id"], v) for v in res["variants"]]:
                mm = outcome["mismatch"] or {}
                writer.writerow([entry["id"], params, check, outcome["status"],
                                 mm.get("n", ""), mm.get("monomial", ""),
                                 mm.get("lhs", ""), mm.get("rhs", "")])
    return buf.getvalue()


def _render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return report_json(report)
    if fmt == "csv":
        return report_csv(report)
    return report_text(report)


def cmd_verify(args) -> int:
    registry = register_paper_catalog()
    if args.all:
        ids = None
    else:
        ids = args.case
        for cid in ids:
            registry[cid]
    report = run_all(args.order, registry, ids)
    _emit(_render_report(report, args.format), args.out)
    if report["mandatory"]["failing"]:
        print("mandatory identities failed: " + ", ".join(report["mandatory"]["failing"]),
              file=sys.stderr)
        return 1
    return 0


def cmd_report(args) -> int:
    report = run_all(args.order)
    _emit(_render_report(report, args.format), args.out)
    return 0


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="egfverify",
        description="Exact tangent/Bernoulli/Euler/Genocchi/Hermite family tables "
                    "and identity verification.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def family_args(p):
        p.add_argument("--family", required=True, help="family id, e.g. hermite-tangent")
        p.add_argument("--r", type=_nonneg, default=1, help="order r (default 1)")
        p.add_argument("--k", type=int, default=None, help="polylog index for poly-families")

    p = sub.add_parser("expand", help="coefficient table P_0..P_N of a family")
    family_args(p)
    p.add_argument("--order", type=_nonneg, required=True)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("eval", help="exact value of P_n at a rational point")
    family_args(p)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--x", type=rational, default=Fraction(0))
    p.add_argument("--y", type=rational, default=Fraction(0))
    p.add_argument("--u", type=rational, default=Fraction(1))
    p.add_argument("--l", type=rational, default=Fraction(0))
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="check registered identities")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--case", action="append", help="case id (repeatable)")
    which.add_argument("--all", action="store_true")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--format", choices=("json", "text", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="full identity report as a table")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("families", help="list family ids")
    p.set_defaults(func=lambda args: _emit(
        "".join(f"{name:26s} {info.summary}\n" for name, info in FAMILIES.items()), None) or 0)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "order", 1) is not None and args.verb in ("verify", "report") \
            and args.order < 1:
        parser.error("--order must be >= 1 for verify/report")
    try:
        return args.func(args)
    except (UnknownFamily, UnknownCase, UsageError) as exc:
        print(f"egfverify: error: {exc}", file=sys.stderr)
        return 2
    except EgfError as exc:
        print(f"egfverify: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
