"""Command line: ``verify``, ``explain``, ``table`` and ``certify``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import campaign, tables, wreath
from .errors import MaxClassError, UnknownCheck
from .groups import make_group


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxclass", description="Unit groups of GF(2)[G] for 2-groups of maximal class.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification campaign")
    v.add_argument("--family", default="all", choices=["d", "s", "q", "all"])
    v.add_argument("--n-min", type=int, default=3)
    v.add_argument("--n-max", type=int, default=6)
    v.add_argument("--checks", default="all", help="comma separated check ids, or 'all'")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default=None, help="report path (stdout summary only when omitted)")
    v.add_argument("--format", dest="fmt", default="json", choices=["json", "text"])
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--samples", type=int, default=campaign.DEFAULT_SAMPLES)

    e = sub.add_parser("explain", help="claim and strategy of a check")
    e.add_argument("check_id", nargs="?")
    e.add_argument("--list", action="store_true", help="list all check ids")

    t = sub.add_parser("table", help="dump a group table as JSON")
    t.add_argument("--family", default="d", choices=["d", "s", "q"])
    t.add_argument("--n", type=int, default=3)
    t.add_argument("--object", dest="obj", default="section", choices=["F", "section", "wreath"])
    t.add_argument("--export", required=True, help="output path")

    c = sub.add_parser("certify", help="write the wreath-section certificate for one group")
    c.add_argument("--family", default="d", choices=["d", "s", "q"])
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--out", required=True)
    return p


def _verify(args) -> int:
    report = campaign.run_campaign(
        families=args.family,
        n_min=args.n_min,
        n_max=args.n_max,
        checks=args.checks,
        seed=args.seed,
        output_path=args.out,
        fmt=args.fmt,
        jobs=args.jobs,
        samples=args.samples,
    )
    if args.out is None:
        print(report.dumps() if args.fmt == "json" else report.to_text())
    else:
        s = report.to_json()["summary"]
        print(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped -> {args.out}")
    return report.exit_code


def _explain(args) -> int:
    if args.list or args.check_id is None:
        print("\n".join(campaign.CHECK_IDS))
        return 0
    print(campaign.explain(args.check_id), end="")
    return 0


def _table(args) -> int:
    spec = make_group(args.family, args.n)
    if args.obj == "wreath":
        table = wreath.build_wreath(spec.n - 2)
    else:
        sec = wreath.construct_section(spec)
        table = sec.F if args.obj == "F" else sec.quotient
    table.export(args.export)
    print(f"{table.name}: {table.order} elements -> {args.export}")
    return 0


def _certify(args) -> int:
    spec = make_group(args.family, args.n)
    sec = wreath.construct_section(spec)
    W = wreath.build_wreath(spec.n - 2)
    doc = wreath.certificate(sec, W, explicit=sec.quotient.order <= tables.EXPLICIT_LIMIT)
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=2)
    print(f"{spec.name}: section of order {doc['section_order']}, class {doc['class']} -> {args.out}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {"verify": _verify, "explain": _explain, "table": _table, "certify": _certify}[args.command]
    try:
        return handler(args)
    except UnknownCheck as exc:
        print(f"error: unknown check {exc.args[0]!r}; see 'maxclass explain --list'", file=sys.stderr)
        return 2
    except (MaxClassError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
