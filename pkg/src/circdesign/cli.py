"""Command-line front end.

Usage::

    circdesign construct --strength 2,5 --seed 42 --out d.json
    circdesign verify --in d.json --format csv
    circdesign moments --in d.json --krange 1..10
    circdesign scan --r 2/1 --lo -0.99 --hi 0.49 --steps 100000
    circdesign group --ngon 4

Exit codes: 0 success/PASS, 1 FAIL verdict, 2 usage or input error,
3 construction failure.  When ``--out`` is omitted, standard output carries
exactly one JSON or CSV document and diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .construction import (SearchConfig, StrengthSpec, antipodal_pairs, construct_design,
                           regular_ngon)
from .core import DEFAULT_SEPARATION, Design, moments
from .errors import DesignError, SearchExhaustedError
from .moment_functions import scan_zeros
from .verification import verify

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SEARCH = 3


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(out).write_text(text)


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


def _strength(text: str) -> StrengthSpec:
    try:
        return StrengthSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _rational(text: str) -> Fraction:
    try:
        r = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected num/den, got {text!r}") from None
    if r <= 0:
        raise argparse.ArgumentTypeError(f"r must be positive, got {text}")
    return r


def _krange(text: str) -> tuple[int, int]:
    try:
        a, b = (int(p) for p in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if a < 1 or a > b:
        raise argparse.ArgumentTypeError(f"need 1 <= a <= b, got {text!r}")
    return a, b


def _load(path: str) -> Design:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return Design.from_json(text)
    except DesignError as exc:
        raise UsageError(f"invalid design file {path}: {exc}") from None


def cmd_construct(args: argparse.Namespace) -> int:
    cfg = SearchConfig(k_max=args.kmax, margin_min=args.margin, separation=args.sep,
                       max_retries=args.max_retries, seed=args.seed)
    T = args.strength
    k_max = cfg.resolve_k_max(T.degrees)
    if k_max < T.degrees[-1]:
        raise UsageError(f"--kmax {k_max} is below the largest degree {T.degrees[-1]}")
    try:
        X = construct_design(T, cfg)
    except SearchExhaustedError as exc:
        _diag(f"error: {exc}")
        return EXIT_SEARCH
    report = verify(X, T.degrees, k_max)
    _emit(X.to_json(), args.out)
    summary = (f"points: {len(X)}\n"
               f"strength: {T} (checked up to k_max={k_max})\n"
               f"verdict: {report.verdict}\n"
               f"min_nonzero_margin: {report.min_nonzero_margin:.6e}\n"
               f"max_zero_residual: {report.max_zero_residual:.6e}")
    if args.out is None:
        _diag(summary)
    else:
        print(summary)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    X = _load(args.inp)
    if args.claimed is not None:
        claimed = args.claimed.degrees
    elif X.trace is not None:
        claimed = tuple(sorted(X.trace.degrees))
    else:
        raise UsageError("design has no trace; pass --claimed")
    k_max = args.kmax
    if k_max is None and X.trace is not None and X.trace.config:
        k_max = X.trace.config.get("k_max")
    if k_max is None:
        k_max = max(10 * max(claimed), 200)
    if k_max < max(claimed):
        raise UsageError(f"--kmax {k_max} is below the largest claimed degree {max(claimed)}")
    report = verify(X, claimed, int(k_max), args.zero_tol)
    _emit(report.to_json() if args.format == "json" else report.to_csv(), args.out)
    _diag(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_moments(args: argparse.Namespace) -> int:
    X = _load(args.inp)
    a, b = args.krange
    ks = range(a, b + 1)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "re", "im", "magnitude"])
    for k, m in zip(ks, moments(X, ks)):
        w.writerow([k, repr(float(m.real)), repr(float(m.imag)), repr(float(abs(m)))])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    try:
        result = scan_zeros(args.r, args.lo, args.hi, args.steps)
    except DesignError as exc:
        raise UsageError(str(exc)) from None
    _emit(result.to_csv(), args.out)
    if result.identically_zero:
        _diag(f"f_{args.r} vanishes on the whole grid")
    else:
        _diag(f"{len(result.refined_zeros)} sign-change zeros of f_{args.r} "
              f"(grid step {result.grid_step:.3e})")
    return EXIT_OK


def cmd_group(args: argparse.Namespace) -> int:
    if (args.ngon is None) == (args.antipodal is None):
        raise UsageError("give exactly one of --ngon or --antipodal")
    try:
        if args.ngon is not None:
            X = regular_ngon(args.ngon, args.offset, args.sep)
        else:
            X = antipodal_pairs(args.antipodal, args.sep)
    except DesignError as exc:
        raise UsageError(str(exc)) from None
    _emit(X.to_json(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circdesign",
        description="Construct and verify point sets on the unit circle with prescribed harmonic strength.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a design with a given strength set")
    p.add_argument("--strength", type=_strength, required=True,
                   help="comma-separated positive degrees, e.g. 2,5")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--kmax", type=_positive_int, default=None,
                   help="degree bound for search and verification (default max(10*max(T), 200))")
    p.add_argument("--margin", type=float, default=1e-6,
                   help="minimal magnitude of non-vanishing moments per stage")
    p.add_argument("--sep", type=_positive_float, default=DEFAULT_SEPARATION,
                   help="point separation threshold in radians")
    p.add_argument("--max-retries", type=_positive_int, default=10_000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a design's strength up to a degree bound")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--claimed", type=_strength, default=None,
                   help="claimed degrees (default: degrees recorded in the trace)")
    p.add_argument("--kmax", type=_positive_int, default=None)
    p.add_argument("--zero-tol", type=_positive_float, default=None,
                   help="default 1e-10 * number of points")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("moments", help="tabulate complex moments")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--krange", type=_krange, required=True, help="a..b")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("scan", help="locate sign-change zeros of the moment function f_r")
    p.add_argument("--r", type=_rational, required=True, help="num/den")
    p.add_argument("--lo", type=float, default=-0.99)
    p.add_argument("--hi", type=float, default=0.49)
    p.add_argument("--steps", type=int, default=100_000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("group", help="emit a group-type reference design")
    p.add_argument("--ngon", type=_positive_int, default=None)
    p.add_argument("--antipodal", type=float, default=None, metavar="THETA",
                   help="second antipodal pair at THETA radians")
    p.add_argument("--offset", type=float, default=0.0)
    p.add_argument("--sep", type=_positive_float, default=DEFAULT_SEPARATION)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_group)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        _diag(f"error: {exc}")
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
