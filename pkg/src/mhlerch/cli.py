"""Command-line front end: evaluation, zeta, identity verification, and
convergence benchmarking with machine-readable (JSON/CSV) output.

Exit codes: 0 success, 1 usage/domain error, 2 non-convergence or
verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import exact, series, verify
from .errors import DomainError, InvalidShiftError, PrecisionError
from .series import SeriesResult, ShiftParam

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_CONVERGED = 2

#: Tolerance used when computing the high-accuracy benchmark reference.
REFERENCE_TOL = 1e-13

CSV_HEADER = ("method", "s", "z_re", "z_im", "tol", "terms", "achieved_error")

BENCH_METHODS = ("accelerated", "direct_alternating", "euler_transform")


@dataclass(frozen=True)
class ConvergenceRow:
    """One (method, s, tolerance) benchmark outcome."""

    method: str
    s: int
    z_re: float
    z_im: float
    tol: float
    terms: int
    achieved_error: float


def rows_to_csv(rows: Sequence[ConvergenceRow], notes: Sequence[str] = ()) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(CSV_HEADER)
    for note in notes:
        out.write(f"# {note}\r\n")
    for r in rows:
        writer.writerow(
            [r.method, r.s, repr(r.z_re), repr(r.z_im), repr(r.tol), r.terms, repr(r.achieved_error)]
        )
    return out.getvalue()


def rows_from_csv(text: str) -> List[ConvergenceRow]:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.reader(lines)
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    return [
        ConvergenceRow(m, int(s), float(zr), float(zi), float(t), int(n), float(e))
        for m, s, zr, zi, t, n, e in reader
    ]


def _row_dict(row: ConvergenceRow) -> dict:
    return dict(
        zip(CSV_HEADER, (row.method, row.s, row.z_re, row.z_im, row.tol, row.terms, row.achieved_error))
    )


def rows_to_json(rows: Sequence[ConvergenceRow], notes: Sequence[str] = ()) -> str:
    return json.dumps({"notes": list(notes), "rows": [_row_dict(r) for r in rows]}, indent=2)


def rows_from_json(text: str) -> List[ConvergenceRow]:
    return [ConvergenceRow(**entry) for entry in json.loads(text)["rows"]]


def parse_complex(text: str) -> complex:
    """'RE' or 'RE,IM' -> complex."""
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"expected RE or RE,IM, got {text!r}")


def parse_rational(text: str) -> Fraction:
    """'P/Q' or 'P' -> Fraction (exact)."""
    return Fraction(text)


def _parse_int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x]


def _parse_float_list(text: str) -> List[float]:
    return [float(x) for x in text.split(",") if x]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mhlerch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=series.DEFAULT_TOL)
        p.add_argument("--max-terms", type=int, default=series.DEFAULT_MAX_TERMS)
        p.add_argument("--json", metavar="PATH", help="also write the JSON output to PATH")

    p_eval = sub.add_parser("eval", help="evaluate the shifted polylogarithm")
    p_eval.add_argument("--s", type=int, required=True)
    point = p_eval.add_mutually_exclusive_group(required=True)
    point.add_argument("--w", type=parse_complex, help="argument w (RE or RE,IM)")
    point.add_argument("--z", type=parse_complex, help="series variable z = w/(w-1)")
    shift_group = p_eval.add_mutually_exclusive_group()
    shift_group.add_argument("--alpha", type=parse_complex, default=0j)
    shift_group.add_argument(
        "--alpha-rat",
        type=parse_rational,
        help="exact rational shift P/Q; enables the exact-layer coefficient cross-check",
    )
    p_eval.add_argument(
        "--method", choices=("accelerated", "direct", "euler"), default="accelerated"
    )
    common(p_eval)

    p_zeta = sub.add_parser("zeta", help="evaluate zeta(s), s >= 2")
    p_zeta.add_argument("--s", type=int, required=True)
    common(p_zeta)

    p_verify = sub.add_parser("verify", help="run identity/bound verification suites")
    p_verify.add_argument("--suite", default="all", choices=verify.SUITE_NAMES + ("all",))
    p_verify.add_argument("--q-max", type=int, default=None)
    p_verify.add_argument("--s-max", type=int, default=None)
    p_verify.add_argument("--p-max", type=int, default=None)
    p_verify.add_argument(
        "--beta",
        type=parse_rational,
        action="append",
        default=None,
        help="rational beta grid point (repeatable); default is the built-in grid",
    )
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.add_argument("--json", metavar="PATH")

    p_bench = sub.add_parser("bench", help="terms-to-tolerance comparison of the methods")
    p_bench.add_argument("--s-list", type=_parse_int_list, default=[2, 3, 4])
    p_bench.add_argument("--tol-list", type=_parse_float_list, default=[1e-6, 1e-10])
    p_bench.add_argument("--max-terms", type=int, default=series.DEFAULT_MAX_TERMS)
    p_bench.add_argument("--csv", metavar="PATH", help="also write the CSV to PATH")
    p_bench.add_argument("--json", metavar="PATH", help="also write the rows as JSON to PATH")

    return parser


def _result_payload(result: SeriesResult) -> dict:
    return {
        "value_re": result.value.real,
        "value_im": result.value.imag,
        "terms_used": result.terms_used,
        "error_bound": result.error_bound,
        "converged": result.converged,
    }


def _exact_crosscheck(alpha: Fraction, s: int, p_max: int = 20) -> dict:
    """Compare the float coefficient stream against the exact one at this shift."""
    shift = ShiftParam(complex(float(alpha)))
    float_stream = series._coefficient_stream(shift.alpha, s)
    worst = 0.0
    for p, c_exact in zip(range(1, p_max + 1), exact.coefficient_stream(alpha, s)):
        _, c_float, _ = next(float_stream)
        worst = max(worst, abs(c_float - float(c_exact)) / abs(float(c_exact)))
    return {"p_max": p_max, "max_rel_err": worst, "ok": worst <= 1e-12}


def _emit_json(payload, path: Optional[str]) -> None:
    text = json.dumps(payload, indent=2)
    print(text)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def cmd_eval(args) -> int:
    if args.alpha_rat is not None:
        shift = ShiftParam(complex(float(args.alpha_rat)))
    else:
        shift = ShiftParam(args.alpha)

    if args.w is not None:
        w, z = args.w, None
    else:
        z = args.z
        w = series.disk_to_half_plane(z)

    if args.method == "direct":
        result = series.lerch_direct(w, shift, args.s, args.tol, args.max_terms)
    elif args.method == "accelerated":
        result = series.lerch_accelerated(w, shift, args.s, args.tol, args.max_terms)
    else:  # euler: same series, so reuse the accelerated stopping point and bound
        budget = series.lerch_accelerated(w, shift, args.s, args.tol, args.max_terms)
        if z is None:
            z = series.half_plane_to_disk(w)
        value = series.euler_transform_eval(z, shift, args.s, budget.terms_used)
        result = SeriesResult(value, budget.terms_used, budget.error_bound, budget.converged)

    payload = _result_payload(result)
    if args.alpha_rat is not None:
        payload["exact_crosscheck"] = _exact_crosscheck(args.alpha_rat, args.s)
    _emit_json(payload, args.json)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def cmd_zeta(args) -> int:
    result = series.zeta_accelerated(args.s, args.tol, args.max_terms)
    payload = {"s": args.s, "value": result.value.real}
    payload.update(
        {k: v for k, v in _result_payload(result).items() if not k.startswith("value_")}
    )
    _emit_json(payload, args.json)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def cmd_verify(args) -> int:
    reports = verify.run_suite(
        args.suite,
        q_max=args.q_max,
        s_max=args.s_max,
        p_max=args.p_max,
        betas=args.beta,
        tol=args.tol,
    )
    _emit_json([r.to_dict() for r in reports], args.json)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NOT_CONVERGED


def bench_rows(
    s_list: Sequence[int],
    tol_list: Sequence[float],
    max_terms: int = series.DEFAULT_MAX_TERMS,
) -> Tuple[List[ConvergenceRow], List[str]]:
    """Terms needed per method to reach each tolerance on zeta(s).

    `accelerated` stops by its own a-posteriori rule; the other two methods
    count partial-sum terms until the error measured against the high-accuracy
    accelerated reference first falls below the tolerance (capped at
    `max_terms`, in which case the row's achieved_error exceeds its tol).
    """
    rows: List[ConvergenceRow] = []
    notes: List[str] = []
    shift = ShiftParam(0j)
    for s in s_list:
        if s < 2:
            notes.append(f"s={s} omitted: zeta(s) series needs s >= 2 (s = 1 is the pole)")
            continue
        factor = 1.0 / (1.0 - 2.0 ** (1 - s))
        reference = series.zeta_accelerated(s, REFERENCE_TOL, max(max_terms, 10000)).value.real
        for tol in tol_list:
            accelerated = series.zeta_accelerated(s, tol, max_terms)
            rows.append(
                ConvergenceRow(
                    "accelerated", s, 0.5, 0.0, tol,
                    accelerated.terms_used, abs(accelerated.value.real - reference),
                )
            )

            total = 0.0
            z_pow = 1.0
            error = None
            for p in range(1, max_terms + 1):
                z_pow *= 0.5
                total += z_pow * series.euler_inner_sum(p, shift, s).real
                error = abs(-factor * total - reference)
                if error <= tol:
                    break
            rows.append(ConvergenceRow("euler_transform", s, 0.5, 0.0, tol, p, error))

            partial = 0.0
            sign = -1.0
            error = None
            for n in range(1, max_terms + 1):
                partial += sign / float(n) ** s
                sign = -sign
                error = abs(-factor * partial - reference)
                if error <= tol:
                    break
            rows.append(ConvergenceRow("direct_alternating", s, -1.0, 0.0, tol, n, error))

    rows.sort(key=lambda r: (r.method, r.s, r.tol))
    return rows, notes


def cmd_bench(args) -> int:
    rows, notes = bench_rows(args.s_list, args.tol_list, args.max_terms)
    text = rows_to_csv(rows, notes)
    sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(text)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(rows_to_json(rows, notes) + "\n")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {"eval": cmd_eval, "zeta": cmd_zeta, "verify": cmd_verify, "bench": cmd_bench}
    try:
        return handlers[args.command](args)
    except (DomainError, InvalidShiftError, PrecisionError, ValueError, ZeroDivisionError) as exc:
        print(f"mhlerch {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
