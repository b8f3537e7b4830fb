"""Command-line front end.

Exit status: 0 success, 1 verification failure, 2 usage or parse error,
3 internal error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import catalog as cat
from .arith import format_poly, format_ratfunc
from .idl import ParseError
from .sequences import SeqKind, seq_binet, seq_explicit, seq_poly
from .series import DEFAULT_ORDER, EGF_FAMILIES, OGF_FORMS, GfSpec, gf_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chebfib", description="Exact Chebyshev/Fibonacci identity engine.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seq", help="print one polynomial of a sequence family")
    s.add_argument("--kind", required=True, help="T, U, F, B or C")
    s.add_argument("--n", required=True, type=_nonneg)
    s.add_argument("--method", choices=("recurrence", "binet", "explicit"), default="recurrence")

    s = sub.add_parser("series", help="print generating function coefficients 0..order")
    s.add_argument("--family", required=True, choices=tuple(OGF_FORMS) + EGF_FAMILIES)
    s.add_argument("--order", type=_nonneg, default=8)
    s.add_argument("--factorial", action="store_true",
                   help="for exponential families, multiply coefficient j by j!")

    s = sub.add_parser("verify", help="verify catalog entries or identities from a file")
    s.add_argument("path", nargs="?", help="identity file to verify")
    s.add_argument("--catalog", metavar="ID", help="catalog id, id prefix, or 'all'")
    s.add_argument("--n-max", type=int, help="largest n (default depends on the entry's mode)")
    s.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER, help="truncation order for functional equations")
    s.add_argument("--report", type=Path, help="write a structured JSON report here")
    s.add_argument("--format", choices=("text", "structured"), default="text")
    s.add_argument("--parallelism", type=_positive)

    s = sub.add_parser("numbers", help="verify the integer-valued catalog entries")
    s.add_argument("--corollary", default=None, help="id prefix such as COR8")
    s.add_argument("--n-max", type=int)
    s.add_argument("--format", choices=("text", "structured"), default="text")
    s.add_argument("--parallelism", type=_positive)

    s = sub.add_parser("catalog", help="list catalog entries")
    s.add_argument("--list", action="store_true", required=True)
    s.add_argument("--prefix")
    s.add_argument("--variants", action="store_true", help="include as-printed variants")
    return p


def cmd_seq(args, out) -> int:
    try:
        kind = SeqKind.parse(args.kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fn = {"recurrence": seq_poly, "binet": seq_binet, "explicit": seq_explicit}[args.method]
    try:
        p = fn(kind, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(format_poly(p), file=out)
    return EXIT_OK


def cmd_series(args, out) -> int:
    spec = GfSpec(args.family)
    s = gf_series(spec, args.order)
    coeffs = list(s)
    if args.factorial and spec.is_egf:
        coeffs = [c * math.factorial(j) for j, c in enumerate(coeffs)]
    text = [format_poly(c.num) if c.is_poly() else format_ratfunc(c) for c in coeffs]
    print(", ".join(text), file=out)
    return EXIT_OK


def _emit(reports, args, out, n_hi: Optional[int], order: int) -> int:
    if getattr(args, "report", None):
        args.report.write_text(cat.report_json(reports, n_hi, order), encoding="utf-8")
    if args.format == "structured":
        out.write(cat.report_json(reports, n_hi, order, timing=False))
    else:
        out.write(cat.format_text(reports))
        passed = sum(r.status == "pass" for r in reports)
        out.write(f"{passed}/{len(reports)} entries pass; verdict: "
                  f"{'PASS' if cat.gate_passed(reports) else 'FAIL'}\n")
    return EXIT_OK if cat.gate_passed(reports) else EXIT_FAIL


def cmd_verify(args, out) -> int:
    if bool(args.path) == bool(args.catalog):
        raise UsageError("give exactly one of a file path or --catalog")
    if args.path:
        try:
            text = Path(args.path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
        entries = cat.entries_from_text(text)
        if not entries:
            raise UsageError(f"{args.path} contains no identities")
    else:
        entries = cat.catalog_list(args.catalog, include_variants=True)
        if not entries:
            raise UsageError(f"no catalog entry matches {args.catalog!r}")
    reports = cat.run_entries(entries, args.n_max, args.order, args.parallelism)
    return _emit(reports, args, out, args.n_max, args.order)


def cmd_numbers(args, out) -> int:
    entries = [e for e in cat.catalog_list(args.corollary, include_variants=True, include_fe=False)
               if e.mode == "numeric"]
    if not entries:
        raise UsageError(f"no integer-valued entries match {args.corollary!r}")
    reports = cat.run_entries(entries, args.n_max, parallelism=args.parallelism)
    return _emit(reports, args, out, args.n_max, DEFAULT_ORDER)


def cmd_catalog(args, out) -> int:
    for e in cat.catalog_list(args.prefix, include_variants=args.variants):
        print(f"{e.id}\t{e.mode}\t{e.anchor}", file=out)
    return EXIT_OK


COMMANDS = {"seq": cmd_seq, "series": cmd_series, "verify": cmd_verify,
            "numbers": cmd_numbers, "catalog": cmd_catalog}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        where = f"{args.path}:" if getattr(args, "path", None) else ""
        print(f"{where}{exc.line}:{exc.col}: {exc}", file=err)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"chebfib: error: {exc}", file=err)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"chebfib: internal error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
