"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .kernel import QuadratureError, projection_failure_demo, theorem_check_ell1
from .montecarlo import EigenSolverError, TrialConfig, compare_with_exact, estimate
from .numberfield import ONE, qs2_to_decimal
from .probabilities import expected_real_count, generating_function, probability_table
from .rho import rho_matrix

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2, 3
DEFAULT_MAX_N = 24


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _check_n(args, lo=1, hi=None):
    hi = args.max_n if hi is None else hi
    if args.n < lo or args.n > hi:
        raise UsageError(f"--n must lie in [{lo}, {hi}], got {args.n}")


def _render_rows(header, rows, fmt, payload):
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(str(c) for c in r) for r in rows]
        return "\n".join(lines)
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    fmt_row = lambda r: "  ".join(str(c).rjust(w) for c, w in zip(r, widths))
    return "\n".join([fmt_row(header), "  ".join("-" * w for w in widths)] + [fmt_row(r) for r in rows])


def cmd_exact(args) -> int:
    _check_n(args)
    table = probability_table(args.n, args.digits)
    if args.format == "json":
        print(table.to_json())
    elif args.format == "csv":
        print(table.to_csv(), end="")
    else:
        rows = [(r.k, str(r.exact), r.decimal) for r in table.rows]
        print(_render_rows(("k", "exact", "decimal"), rows, "table", None))
    return EXIT_OK if table.total() == ONE else EXIT_VERIFY


def cmd_gf(args) -> int:
    _check_n(args)
    gf = generating_function(args.n)
    total = gf(ONE)
    ok = total == ONE
    if args.format == "json":
        print(gf.to_json())
    else:
        rows = [
            (l, args.n - 2 * l, str(c), qs2_to_decimal(c, args.digits))
            for l, c in enumerate(gf.coefficients)
        ]
        header = ("ell", "k", "coefficient", "decimal")
        if args.format == "csv":
            print(_render_rows(header, rows, "csv", None))
        else:
            print(_render_rows(header, rows, "table", None))
            print("sum = 1 (exact)" if ok else f"sum = {total} (NOT 1)")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_en(args) -> int:
    _check_n(args)
    exact, formula = expected_real_count(args.n)
    dec = qs2_to_decimal(exact, args.digits)
    rel = abs(float(exact) - formula) / abs(formula)
    payload = {
        "n": args.n,
        "exact": str(exact),
        "decimal": dec,
        "formula": formula,
        "rel_err": rel,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        header = tuple(payload)
        row = (args.n, str(exact), dec, f"{formula:.{args.digits}f}", f"{rel:.3e}")
        print(_render_rows(header, [row], args.format, None))
    return EXIT_OK if rel < 1e-10 else EXIT_VERIFY


def cmd_mc(args) -> int:
    _check_n(args)
    if args.trials < 1 or args.workers < 1:
        raise UsageError("--trials and --workers must be positive")
    cfg = TrialConfig(args.n, args.trials, args.seed, args.workers)
    try:
        counts = estimate(cfg)
    except EigenSolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    report = compare_with_exact(counts, args.seed, args.workers)
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        print(report.to_csv(), end="")
    else:
        d = report.as_dict()
        rows = [
            (k, d["counts"][k], f"{d['frequencies'][k]:.6f}", f"{d['exact'][k]:.6f}",
             f"{d['z_scores'][k]:+.2f}")
            for k in d["counts"]
        ]
        print(_render_rows(("k", "count", "frequency", "exact", "z"), rows, "table", None))
        print(f"chi2 = {d['chi2']:.3f} (dof {d['chi2_dof']}, p = {d['chi2_pvalue']:.4f})")
        print(f"mean = {d['mean']:.6f}, exact E_n = {d['exact_mean']:.6f}")
    return EXIT_OK


def cmd_verify_kernel(args) -> int:
    _check_n(args, 2, 8)
    try:
        check = theorem_check_ell1(args.n)
        demo = projection_failure_demo(args.n) if args.n <= 6 else None
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    report = check.as_dict()
    ok = check.rel_err < 1e-6
    if demo is not None:
        report["projection"] = demo.as_dict()
        ok = ok and demo.gap > 1e3 * demo.quadrature_error_estimate
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(f"n = {check.n}")
        print(f"lhs (quadrature)  = {check.lhs:.12g}")
        print(f"rhs (exact tr rho) = {check.rhs:.12g}")
        print(f"rel_err = {check.rel_err:.3e}, quadrature error = {check.quadrature_error_estimate:.3e}")
        if demo is not None:
            print(f"projection gap = {demo.gap:.6g} (quadrature error {demo.quadrature_error_estimate:.3e})")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_dump_rho(args) -> int:
    _check_n(args)
    print(rho_matrix(args.n).to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ginibre", description="Real-eigenvalue statistics of real Ginibre matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt=True):
        p.add_argument("--n", type=int, required=True, help="matrix dimension")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="largest n accepted")
        p.add_argument("--digits", type=int, default=6, help="fractional digits in decimals")
        if fmt:
            p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        return p

    common(sub.add_parser("exact", help="exact p(n, k) table")).set_defaults(func=cmd_exact)
    common(sub.add_parser("gf", help="generating-function coefficients")).set_defaults(func=cmd_gf)
    common(sub.add_parser("en", help="expected number of real eigenvalues")).set_defaults(func=cmd_en)
    mc = common(sub.add_parser("mc", help="Monte Carlo estimate vs exact"))
    mc.add_argument("--trials", type=int, default=100_000)
    mc.add_argument("--seed", type=int, default=0)
    mc.add_argument("--workers", type=int, default=1)
    mc.set_defaults(func=cmd_mc)
    common(sub.add_parser("verify-kernel", help="quadrature check of the kernel integration formula")).set_defaults(
        func=cmd_verify_kernel
    )
    common(sub.add_parser("dump-rho", help="exact rho matrix as JSON"), fmt=False).set_defaults(func=cmd_dump_rho)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.digits < 1:
        print("error: --digits must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.max_n != DEFAULT_MAX_N:
        print(f"warning: --max-n overridden to {args.max_n}", file=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
