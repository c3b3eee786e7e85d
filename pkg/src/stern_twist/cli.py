"""Command-line front end: ``stern-twist value|series|verify|rationals|bfile``.

Exit codes: 0 success, 1 a requested check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import idcat, seqcore

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SERIES = {
    "S": idcat.gen_S,
    "T": idcat.gen_T,
    "U": idcat.gen_U,
    "G": idcat.gen_G,
    "H": idcat.gen_H,
}


class UsageError(Exception):
    pass


def natural(text: str) -> int:
    """Decimal, or hexadecimal with a ``0x`` prefix."""
    t = text.strip().replace("_", "")
    try:
        v = int(t[2:], 16) if t.lower().startswith("0x") else int(t, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")
    return v


def positive(text: str) -> int:
    v = natural(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stern-twist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    v = sub.add_parser("value", help="print s(n) or t(n)")
    v.add_argument("seq", choices=("s", "t"))
    v.add_argument("n", type=natural)
    v.add_argument("--format", choices=("plain", "json"), default="plain")

    s = sub.add_parser("series", help="print coefficients of S, T, U, G or H")
    s.add_argument("name", choices=sorted(SERIES))
    s.add_argument("--order", type=positive, required=True)
    s.add_argument("--format", choices=("plain", "json", "bfile"), default="plain")

    ver = sub.add_parser("verify", help="check identities of the generating series")
    ver.add_argument("ids", nargs="*", default=["all"], help="identity ids, or 'all'")
    ver.add_argument("--emax", type=natural, default=4)
    ver.add_argument("--order", type=positive, default=1024)
    ver.add_argument("--format", choices=("plain", "json"), default="plain")
    ver.add_argument("--jobs", type=positive, default=1)

    r = sub.add_parser("rationals", help="list s(n+1)/s(n) for n = 1..count")
    r.add_argument("count", type=positive)
    r.add_argument("--check-distinct", action="store_true")
    r.add_argument("--format", choices=("plain", "json"), default="plain")

    b = sub.add_parser("bfile", help="OEIS b-file lines 'n a(n)' for start..end")
    b.add_argument("seq", choices=("s", "t"))
    b.add_argument("start", type=natural)
    b.add_argument("end", type=natural)
    return p


def bfile_lines(seq: str, start: int, end: int) -> list[str]:
    if start > end:
        raise UsageError(f"empty range: start {start} > end {end}")
    if end < (1 << 24):
        vals = (seqcore.stern_range if seq == "s" else seqcore.twisted_range)(end + 1)
        return [f"{n} {vals[n]}" for n in range(start, end + 1)]
    f = seqcore.stern if seq == "s" else seqcore.twisted
    return [f"{n} {f(n)}" for n in range(start, end + 1)]


def _emit(lines: Sequence[str], out) -> None:
    if lines:
        out.write("\n".join(lines) + "\n")


def run_value(args, out) -> int:
    f = seqcore.stern if args.seq == "s" else seqcore.twisted
    val = f(args.n)
    if args.format == "json":
        out.write(json.dumps({"seq": args.seq, "n": str(args.n), "value": str(val)}) + "\n")
    else:
        out.write(f"{val}\n")
    return EXIT_OK


def run_series(args, out) -> int:
    ser = SERIES[args.name](args.order)
    if args.format == "json":
        out.write(json.dumps({"series": args.name, "order": ser.trunc, "coeffs": list(ser.coeffs)}) + "\n")
    elif args.format == "bfile":
        _emit([f"{k} {c}" for k, c in enumerate(ser.coeffs)], out)
    else:
        out.write(" ".join(map(str, ser.coeffs)) + "\n")
    return EXIT_OK


def run_verify(args, out) -> int:
    try:
        ids = idcat.parse_ids(args.ids)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        reports = idcat.run_catalog(ids, args.emax, args.order, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        out.write(json.dumps([r.to_dict() for r in reports], indent=1) + "\n")
    else:
        _emit([str(r) for r in reports], out)
        failed = sum(not r.passed for r in reports)
        out.write(f"{len(reports) - failed}/{len(reports)} passed\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def run_rationals(args, out) -> int:
    qs = seqcore.rationals(args.count)
    if args.format == "json":
        out.write(json.dumps([[q.num, q.den] for q in qs]) + "\n")
    else:
        _emit([str(q) for q in qs], out)
    if args.check_distinct:
        reduced = all(q.is_reduced() for q in qs)
        distinct = len({(q.num, q.den) for q in qs}) == len(qs)
        if not (reduced and distinct):
            print(f"check failed: reduced={reduced} distinct={distinct}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def run_bfile(args, out) -> int:
    _emit(bfile_lines(args.seq, args.start, args.end), out)
    return EXIT_OK


COMMANDS = {
    "value": run_value,
    "series": run_series,
    "verify": run_verify,
    "rationals": run_rationals,
    "bfile": run_bfile,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"stern-twist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.cmd](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"stern-twist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
