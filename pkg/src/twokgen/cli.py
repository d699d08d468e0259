"""Command-line driver.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on a
usage error (bad arguments, parse failures, caps exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import TwokgenError
from .forms import pair_forms, scott
from .genpair import EXCEPTIONS, GeneratorPair, make_pair
from .gf import FieldSpec, parse_field
from .grouporder import DEFAULT_MAX_POINTS, group_report, verdict
from .pipeline import CONSTRAINTS, DEFAULT_MAX_TUPLES, classify, summarize, sweep
from .presentations import identify_quotient
from .suites import SUITES, suite_exception_rows, suite_unitary_exponents, suite_tuples_48_54, verify

DEFAULT_MAX_FIELD = 3**6
TABLES = {"table4": suite_exception_rows, "table5": suite_unitary_exponents, "tuples-48-54": suite_tuples_48_54}


class UsageError(Exception):
    pass


def _emit(obj, as_json: bool, text: str | None = None) -> None:
    if as_json or text is None:
        print(json.dumps(obj, default=str))
    else:
        print(text)


def _field(args) -> FieldSpec:
    f = parse_field(args.field)
    if f.q > args.max_field:
        raise UsageError(f"GF({f.q}) exceeds --max-field {args.max_field}")
    return f


def _pair(args) -> GeneratorPair:
    f = _field(args)
    rs = [f(v) for v in args.r.split(",")]
    if len(rs) != 4:
        raise UsageError("--r needs four comma-separated entries")
    s = None if args.s is None else f(args.s)
    return make_pair(f, args.k, args.d, *rs, s=s)


# ---------------------------------------------------------------- subcommands


def cmd_classify(args) -> int:
    pair = _pair(args)
    c = classify(pair, max_points=args.max_points)
    _emit(c.to_dict(), args.json, f"{pair.describe()}: {c.label}")
    return 0


def cmd_sweep(args) -> int:
    f = _field(args)
    s = None if args.s is None else f(args.s)
    records = sweep(f, args.k, args.d, args.constraint, s=s, jobs=args.jobs,
                    max_points=args.max_points, max_tuples=args.max_tuples)
    for rec in records:
        _emit(rec.to_dict(), args.json, f"r=({','.join(rec.params['r'])}): {rec.classification.label}")
    counts = summarize(records)
    if args.json:
        print(json.dumps({"summary": counts, "records": len(records)}))
    else:
        print(f"-- {len(records)} admissible tuples")
        for v, n in sorted(counts.items()):
            print(f"   {v:<16}{n}")
    return 0


def cmd_order(args) -> int:
    pair = _pair(args)
    rep = group_report([pair.x, pair.y], max_points=args.max_points)
    out = rep.to_dict()
    if args.target:
        out["verdict"] = verdict(pair, args.target, max_points=args.max_points).to_dict()
    print(json.dumps(out))
    return 0


def cmd_forms(args) -> int:
    pair = _pair(args)
    out = {"bilinear": pair_forms(pair, full_scan=args.full_scan).to_dict()}
    if pair.field.a % 2 == 0:
        out["hermitian"] = pair_forms(pair, hermitian=True, full_scan=args.full_scan).to_dict()
    print(json.dumps(out))
    return 0


def cmd_scott(args) -> int:
    rep = scott(_pair(args))
    _emit(rep.to_dict(), args.json,
          f"d_x={rep.d_x} d_y={rep.d_y} d_xy={rep.d_xy} sum={rep.sum} rigid={rep.rigid}")
    return 0


def cmd_identify(args) -> int:
    ident = identify_quotient(_pair(args), max_points=args.max_points)
    _emit(ident.to_dict(), args.json, f"{ident.name or 'not identified'} ({ident.method})")
    return 0


def _report(rep, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rep.to_dict(), default=str))
        return
    for c in rep.claims:
        mark = {True: "PASS", False: "FAIL", None: "NOTE"}[c.passed]
        print(f"[{mark}] {rep.suite}: {c.name}")
    print(f"-- {rep.suite}: {'pass' if rep.passed else 'FAIL'} ({rep.seconds:.1f}s)")


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == ["all"] else args.suite
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    ok = True
    for name in names:
        rep = verify(name)
        _report(rep, args.json)
        ok = ok and rep.passed
    return 0 if ok else 1


def cmd_reproduce_table(args) -> int:
    rep = TABLES[args.table]()
    if args.json:
        print(json.dumps(rep.to_dict(), default=str))
    elif args.table == "table5":
        for c in rep.claims:
            if "computed" in c.evidence:
                print(f"{c.name.split(':')[0]:<32} b = {c.evidence['computed']}  (listed {c.evidence['listed']})")
    elif args.table == "table4":
        for row in EXCEPTIONS:
            print(f"{row.id:<12} {row.condition:<70} {row.outcome}")
        _report(rep, False)
    else:
        _report(rep, False)
    return 0 if rep.passed else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS,
                        help="cap on vectors in the order computation")
    common.add_argument("--max-field", type=int, default=DEFAULT_MAX_FIELD, help="cap on the field size")

    pair = argparse.ArgumentParser(add_help=False, parents=[common])
    pair.add_argument("--field", required=True, help="p^a or p^a:c0,...,ca")
    pair.add_argument("--k", type=int, required=True, help="projective order of y")
    pair.add_argument("--d", type=int, default=1, choices=(1, -1))
    pair.add_argument("--s", default=None, help="trace parameter eps + 1/eps (default: canonical eps)")

    single = argparse.ArgumentParser(add_help=False, parents=[pair])
    single.add_argument("--r", default="0,0,0,1", help="r1,r2,r3,r4 (integers or z^e)")

    p = argparse.ArgumentParser(prog="twokgen", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("classify", parents=[single], help="classify one pair").set_defaults(func=cmd_classify)

    sp = sub.add_parser("sweep", parents=[pair], help="classify a family of tuples")
    sp.add_argument("--constraint", choices=CONSTRAINTS, default="r2=0")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--max-tuples", type=int, default=DEFAULT_MAX_TUPLES)
    sp.set_defaults(func=cmd_sweep)

    op = sub.add_parser("order", parents=[single], help="order, scalars and projective order")
    op.add_argument("--target", choices=("SL4", "Sp4", "SU4"), default=None)
    op.set_defaults(func=cmd_order)

    fp = sub.add_parser("forms", parents=[single], help="invariant forms up to multipliers")
    fp.add_argument("--full-scan", action="store_true", help="try every multiplier pair")
    fp.set_defaults(func=cmd_forms)

    sub.add_parser("scott", parents=[single], help="centralizer dimensions").set_defaults(func=cmd_scott)
    sub.add_parser("identify", parents=[single], help="name the projective image").set_defaults(func=cmd_identify)

    vp = sub.add_parser("verify", parents=[common], help="run verification suites")
    vp.add_argument("suite", nargs="+", help=f"all or any of: {', '.join(SUITES)}")
    vp.set_defaults(func=cmd_verify)

    tp = sub.add_parser("reproduce-table", parents=[common], help="recompute a parameter table")
    tp.add_argument("table", choices=sorted(TABLES))
    tp.set_defaults(func=cmd_reproduce_table)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, TwokgenError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
