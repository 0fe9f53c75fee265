"""Command-line entry point: exact J values, coset-partition search, and the verification suites."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .enclosure import DEFAULT_PRECISION
from .exact import format_rational
from .families import CatalogError, ingest_catalog
from .groupspec import GroupSpecError, build_group, parse_group_spec, render
from .partition import enumerate_cosets, find_partition, validate_witness
from .permgroup import GroupError, index_set, jvalue
from .verify.report import ALL, TARGETS, VERDICT_VERIFIED, VERDICT_WITH_SKIPS, RunOptions, expand, report, run

__all__ = ["main", "parse_group_spec"]

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_USAGE = 2


def _precision_default() -> int:
    return int(os.environ.get("HS_PRECISION_BITS", DEFAULT_PRECISION))


def _target(value: str) -> str:
    try:
        expand(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{exc}; choose from {', '.join(TARGETS + (ALL,))}") from None
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hsverify", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("j", help="print the exact J(G), the sum of 1/index over distinct subgroup indices")
    p.add_argument("spec")
    p = sub.add_parser("indices", help="print the distinct subgroup indices of G")
    p.add_argument("spec")
    p = sub.add_parser("hs-search", help="search for a partition of G into cosets of proper subgroups")
    p.add_argument("spec")
    p.add_argument("--allow-repeats", action="store_true", help="do not require pairwise distinct indices")

    def run_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--nmax", type=int, default=10**4, help="alternating sweep cap (default 10^4)")
        p.add_argument("--qmax", type=int, default=10**4, help="prime power sweep cap (default 10^4)")
        p.add_argument("--precision", type=int, default=_precision_default(), help="working precision in bits")
        p.add_argument("--catalog", help="alternating maximal subgroup catalog file")
        p.add_argument("--allow-skips", action="store_true", help="exit 0 when the only non-verified results are skips")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--timings", action="store_true", help="record timestamps and elapsed times (breaks reproducibility)")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("target", type=_target, help="all, one target, or a comma-separated list")
    run_flags(p)
    p = sub.add_parser("report", help="run every suite and write the JSON report")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--target", type=_target, default=ALL)
    run_flags(p)
    return parser


def _cmd_j(args) -> int:
    print(format_rational(jvalue(build_group(args.spec))))
    return EXIT_OK


def _cmd_indices(args) -> int:
    print(" ".join(str(i) for i in index_set(build_group(args.spec))))
    return EXIT_OK


def _cmd_hs_search(args) -> int:
    group = build_group(args.spec)
    system = enumerate_cosets(group)
    result = find_partition(system, distinct_indices=not args.allow_repeats)
    kind = "any indices" if args.allow_repeats else "distinct indices"
    name = render(parse_group_spec(args.spec))
    if result.witness is not None:
        assert validate_witness(system, result.witness)
        print(f"{name}: partition into {len(result.witness.indices)} cosets with {kind}: "
              f"indices {list(result.witness.indices)} ({result.nodes} nodes)")
    elif result.exhausted:
        print(f"{name}: no partition with {kind} ({result.nodes} nodes, search exhausted)")
    else:
        print(f"{name}: undecided, node limit reached after {result.nodes} nodes")
        return EXIT_UNVERIFIED
    return EXIT_OK


def _options(args) -> RunOptions:
    catalog = ingest_catalog(args.catalog) if args.catalog else None
    return RunOptions(args.nmax, args.qmax, args.precision, catalog, None, args.timings, max(args.jobs, 1))


def _exit_for(verdict: str, allow_skips: bool) -> int:
    if verdict == VERDICT_VERIFIED or (verdict == VERDICT_WITH_SKIPS and allow_skips):
        return EXIT_OK
    return EXIT_UNVERIFIED


def _cmd_verify(args) -> int:
    opts = _options(args)
    certs = run(args.target, opts)
    rep = report(certs, opts, trend=False)
    if args.target == "e8":
        c = certs[0]
        print(f"max total = {c.details['max_total']} at p={c.details['argmax_p']}; {c.verdict}")
    else:
        for c in certs:
            print(f"{c.verdict:22} {c.id}")
        s = rep.summary
        print(f"{rep.verdict}: {s['verified']} verified, {s['failed']} failed, "
              f"{s['inconclusive']} inconclusive, {s['skipped']} skipped")
    return _exit_for(rep.verdict, args.allow_skips)


def _cmd_report(args) -> int:
    opts = _options(args)
    rep = report(run(args.target, opts), opts)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(rep.dumps())
    print(f"{rep.verdict}: wrote {len(rep.certificates)} certificates to {args.out}")
    return _exit_for(rep.verdict, args.allow_skips)


COMMANDS = {"j": _cmd_j, "indices": _cmd_indices, "hs-search": _cmd_hs_search, "verify": _cmd_verify, "report": _cmd_report}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (GroupSpecError, GroupError, CatalogError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
