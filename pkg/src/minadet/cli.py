"""Command-line front end.

Three commands: `verify` runs a determinant-identity check over a given or
randomly generated series and prints a comparison table, `det` prints one
exact determinant (optionally with the matrix), and `selfcheck` runs the
built-in invariant suites.

Exit codes: 0 all verified, 1 mathematical mismatch, 2 usage/input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .matrices import (
    bivariate_iteration_matrix,
    det_bareiss,
    iteration_matrix,
    power_matrix,
)
from .rings import InexactDivisionError, QQ
from .selfcheck import run_selfcheck
from .series import series_from_json
from .verify import THEOREMS, check_series_kind, run_verify

USAGE_ERROR = 2


def load_series_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return series_from_json(payload)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minadet",
        description="Exact verification of power-series determinant identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify", help="check a determinant identity for n = 0..n-max"
    )
    verify.add_argument(
        "--theorem", required=True, choices=THEOREMS,
        help="which identity to check (1: powers, 2: compositional iterates, "
             "3: bivariate transformation, mina: derivative matrix)",
    )
    verify.add_argument("--input", help="series JSON file (omit for random inputs)")
    verify.add_argument("--n-max", type=int, default=4, help="largest matrix size")
    verify.add_argument(
        "--seed", type=int, default=None,
        help="64-bit seed for random inputs (default 0)",
    )
    verify.add_argument(
        "--trials", type=int, default=1,
        help="number of random inputs to draw (ignored with --input)",
    )
    verify.add_argument(
        "--order", type=int, default=None, help="override the truncation order"
    )
    verify.add_argument(
        "--json", action="store_true", help="emit the report as JSON"
    )

    det = sub.add_parser("det", help="print one exact determinant")
    det.add_argument("--theorem", required=True, choices=("1", "2", "3"))
    det.add_argument("--input", required=True, help="series JSON file")
    det.add_argument("--n", type=int, required=True, help="matrix size (dim n+1)")
    det.add_argument(
        "--order", type=int, default=None, help="override the truncation order"
    )
    det.add_argument(
        "--dump-matrix", action="store_true",
        help="also print the matrix, one tab-separated row per line",
    )

    sub.add_parser("selfcheck", help="run the built-in invariant suites")
    return parser


def cmd_verify(args) -> int:
    series = None
    if args.input is not None:
        series = load_series_file(args.input)
    report = run_verify(
        args.theorem,
        args.n_max,
        series=series,
        input_path=args.input,
        seed=args.seed,
        trials=args.trials,
        order=args.order,
    )
    print(report.render_json() if args.json else report.render_text())
    return 0 if report.all_match else 1


_BUILDERS = {
    "1": power_matrix,
    "2": iteration_matrix,
    "3": bivariate_iteration_matrix,
}


def cmd_det(args) -> int:
    series = load_series_file(args.input)
    check_series_kind(args.theorem, series)
    if args.order is not None:
        if args.order > series.order:
            raise ValueError(
                f"--order {args.order} exceeds the input order {series.order}"
            )
        series = series.truncate(args.order)
    matrix = _BUILDERS[args.theorem](series, args.n)
    if args.dump_matrix:
        print(matrix.dump())
    print(QQ.format(det_bareiss(matrix)))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "det":
            return cmd_det(args)
        if args.command == "selfcheck":
            return run_selfcheck(sys.stdout)
    except (ValueError, ZeroDivisionError, InexactDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
