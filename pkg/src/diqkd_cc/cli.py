"""Command-line front end.

Subcommands: idmax, vcrit, table, curve, check-local, asymptotic.
Exit codes: 0 success, 1 usage/validation error, 2 numerical failure.
CSV output is deterministic: `.` decimals, comma delimiter, Unix newlines.
"""
from __future__ import annotations

import argparse
import sys
from math import log2

from . import cglmp, keyrate, polytope, quantum, scenario, svgplot

TABLE_HEADER = "d,vcrit_max,vcrit_cglmp"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this tool reserves 2 for numerical
    failure, so remap usage problems to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _branch_for(state: str, method: str | None) -> str:
    if state == "max":
        method = method or "analytic"
        return keyrate.ANALYTIC_MAX_ENTANGLED if method == "analytic" else keyrate.LP_MAX_ENTANGLED
    if state == "cglmp":
        if method == "analytic":
            raise ValueError("--method analytic is only available with --state max")
        return keyrate.LP_CGLMP_STATE
    raise ValueError(f"unknown state {state!r}")


def _check_d(d: int) -> int:
    if d < 2:
        raise ValueError(f"--d must be >= 2, got {d}")
    return d


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def cmd_idmax(args) -> int:
    d = _check_d(args.d)
    closed = cglmp.idmax_closed_form(d)
    table = quantum.cglmp_born_table(quantum.maximally_entangled_state(d))
    born = cglmp.cglmp_value(table)
    print(f"d = {d}")
    print(f"I_max (closed form) = {closed:.12f}")
    print(f"I_max (Born rule)   = {born:.12f}")
    print(f"difference          = {abs(closed - born):.3e}")
    return 0


def cmd_vcrit(args) -> int:
    d = _check_d(args.d)
    branch = _branch_for(args.state, args.method)
    result = keyrate.critical_visibility(d, branch, cap=args.strategy_cap)
    method = "analytic" if branch == keyrate.ANALYTIC_MAX_ENTANGLED else "lp"
    print(f"d={d} state={args.state} method={method} vcrit={result.v_crit:.5f}")
    return 0


def cmd_table(args) -> int:
    if args.d_min < 2 or args.d_max < args.d_min:
        raise ValueError(f"need 2 <= d-min <= d-max, got [{args.d_min}, {args.d_max}]")
    want_max = args.state in ("max", "both")
    want_cglmp = args.state in ("cglmp", "both")
    if args.state == "cglmp" and args.method == "analytic":
        raise ValueError("--method analytic is only available for the max column")
    max_branch = (keyrate.LP_MAX_ENTANGLED if args.method == "lp"
                  else keyrate.ANALYTIC_MAX_ENTANGLED)
    lines = [TABLE_HEADER]
    for d in range(args.d_min, args.d_max + 1):
        cell_max = cell_cglmp = ""
        if want_max:
            cell_max = f"{keyrate.critical_visibility(d, max_branch, cap=args.strategy_cap).v_crit:.12g}"
        if want_cglmp:
            try:
                cell_cglmp = (f"{keyrate.critical_visibility(d, keyrate.LP_CGLMP_STATE, cap=args.strategy_cap).v_crit:.12g}")
            except polytope.StrategyCapExceeded as exc:
                print(f"d={d}: {exc}; emitting the analytic column only", file=sys.stderr)
        lines.append(f"{d},{cell_max},{cell_cglmp}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_curve(args) -> int:
    d = _check_d(args.d)
    branch = _branch_for(args.state, args.method)
    points = keyrate.keyrate_curve(d, branch, args.v_min, args.v_max, args.steps,
                                   cap=args.strategy_cap)
    scale = log2(d) if args.unit == "bits" else 1.0
    suffix = "_bits" if args.unit == "bits" else ""
    lines = [f"V,qL,H_AE{suffix},H_AB{suffix},r_ub{suffix}"]
    for pt in points:
        lines.append(",".join(f"{v:.12g}" for v in (
            pt.V, pt.qL, pt.pa_term * scale, pt.ec_term * scale, pt.r_ub * scale)))
    _write_text(args.out, "\n".join(lines) + "\n")
    if args.svg:
        chart = svgplot.line_chart(
            [pt.V for pt in points], [pt.r_ub * scale for pt in points],
            xlabel="V", ylabel=f"r_ub ({args.unit})",
            title=f"d={d}, {branch}")
        _write_text(args.svg, chart)
    return 0


def cmd_check_local(args) -> int:
    d = _check_d(args.d)
    if not 0.0 <= args.vtilde <= 1.0:
        raise ValueError(f"--vtilde must lie in [0,1], got {args.vtilde}")
    ideal = quantum.cglmp_born_table(quantum.maximally_entangled_state(d))
    mixed = scenario.mix_with_white_noise(ideal, args.vtilde)
    local, residual = polytope.local_residual(mixed, cap=args.strategy_cap)
    verdict = "local" if local else "nonlocal"
    print(f"d={d} vtilde={args.vtilde:g}: {verdict} "
          f"(slack {residual:.3e}, tolerance {polytope.LP_FEASIBILITY_TOL:g})")
    return 0


def cmd_asymptotic(args) -> int:
    i_max = cglmp.idmax_asymptotic()
    v_crit = keyrate.vcrit_asymptotic()
    print(f"I_max  (d->inf) = {i_max:.3f}  ({i_max:.12f})")
    print(f"V_crit (d->inf) = {v_crit:.4f}  ({v_crit:.12f})")
    print(f"I_crit (d->inf) = {v_crit * i_max:.3f}  ({v_crit * i_max:.12f})")
    return 0


def _add_cap(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strategy-cap", type=int, default=polytope.STRATEGY_CAP,
                   help="refuse LP solves with more deterministic strategies than this")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diqkd-cc",
                     description="Upper bounds on device-independent QKD key rates "
                                 "from convex-combination attacks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("idmax", help="maximal Bell value on the maximally entangled state")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_idmax)

    p = sub.add_parser("vcrit", help="critical visibility for one dimension")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--state", choices=("max", "cglmp"), default="max")
    p.add_argument("--method", choices=("analytic", "lp"), default=None)
    _add_cap(p)
    p.set_defaults(func=cmd_vcrit)

    p = sub.add_parser("table", help="critical-visibility table over a dimension range")
    p.add_argument("--d-min", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.add_argument("--state", choices=("max", "cglmp", "both"), default="both")
    p.add_argument("--method", choices=("analytic", "lp"), default="analytic",
                   help="how the max column is computed (cglmp is always lp)")
    _add_cap(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("curve", help="key-rate bound on a visibility grid")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--state", choices=("max", "cglmp"), default="max")
    p.add_argument("--method", choices=("analytic", "lp"), default=None)
    p.add_argument("--v-min", type=float, required=True)
    p.add_argument("--v-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--svg", default=None, help="optional SVG line-chart path")
    p.add_argument("--unit", choices=("dits", "bits"), default="dits")
    _add_cap(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("check-local", help="local-polytope membership of the mixed table")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--vtilde", type=float, required=True)
    _add_cap(p)
    p.set_defaults(func=cmd_check_local)

    p = sub.add_parser("asymptotic", help="d->infinity constants")
    p.set_defaults(func=cmd_asymptotic)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (RuntimeError, ArithmeticError, OSError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
