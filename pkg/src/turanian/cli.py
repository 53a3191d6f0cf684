"""Command-line front end.

Subcommands: eval (point evaluation by any route), bounds (margin tables),
certify (grid certification runs), table (coefficient and asymptotic-ratio
tables), zeros (Bessel zero listings).  Output is CSV (default) or JSON,
with every numeric field rendered at 17 significant digits so that repeated
runs with the same seed are byte-identical.

Exit codes: 0 success; 2 usage or domain violation; 3 convergence failure;
4 certification ran but found failures.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .scalar import ConvergenceError, DomainError
from .bessel import bessel_j_zeros, is_integer_order
from .quadrature import gauss_legendre
from .delta import (
    delta_auto,
    delta_direct,
    delta_fourier,
    delta_neumann,
    delta_series_integer,
    delta_series_real,
    rho,
    t_coefficient,
)
from .bounds import evaluate_all
from .asymptotics import delta_large_n, delta_large_nu
from .verify import (
    SUITE_NAMES,
    CertificationReport,
    GridSpec,
    certify_zero_sums,
    default_grid,
    run_suite,
)

EVAL_METHODS = ("auto", "direct", "series", "fourier", "neumann", "all")


# ---- serialization ------------------------------------------------------------

def _num(v: float) -> str:
    return format(v, ".17g")


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _num(v)
    return str(v)


def render_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[k]) for k in header))
    return "\n".join(lines) + "\n"


def _json_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if v != v or v in (float("inf"), float("-inf")):
            return f'"{v!r}"'
        return _num(v)
    if isinstance(v, int):
        return str(v)
    if v is None:
        return "null"
    return '"' + str(v).replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  "{k}": {render_json(v, indent + 1).lstrip()}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in seq):
            return "[" + ", ".join(_json_scalar(v) for v in seq) + "]"
        items = [pad + "  " + render_json(v, indent + 1).lstrip() for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _json_scalar(obj)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_rows(rows: list[dict], fmt: str, out: str | None) -> None:
    if fmt == "json":
        _emit(render_json({"rows": rows}) + "\n", out)
    else:
        _emit(render_csv(rows), out)


# ---- range parsing -------------------------------------------------------------

def parse_int_range(text: str) -> list[int]:
    """"3", "1..5" (inclusive), or "1,4,9"."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise DomainError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    return out


def parse_float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",")]


# ---- subcommands ------------------------------------------------------------------

def _eval_rows(nu: float, x: float, method: str, tol: float,
               order: int) -> list[dict]:
    rule = gauss_legendre(order)
    integer = is_integer_order(nu)

    def series(nu, x):
        if integer:
            return delta_series_integer(int(round(nu)), x, tol)
        return delta_series_real(nu, x, tol)

    runners = {
        "auto": lambda: [delta_auto(nu, x, tol, order)],
        "direct": lambda: [delta_direct(nu, x, tol)],
        "series": lambda: [series(nu, x)],
        "fourier": lambda: [delta_fourier(nu, x, rule)],
        "neumann": lambda: [delta_neumann(nu, x, rule)],
    }

    if method == "all":
        results = [delta_direct(nu, x, tol), series(nu, x)]
        if integer and x != 0.0:
            results.append(delta_fourier(int(round(nu)), x, rule))
        if nu > -0.5 and x != 0.0:
            results.append(delta_neumann(nu, x, rule))
    else:
        results = runners[method]()

    return [{"nu": nu, "x": x, "method": r.method, "value": r.value,
             "err_est": r.abs_error_est, "work": r.work,
             "flags": ";".join(r.flags)} for r in results]


def cmd_eval(args) -> int:
    rows = _eval_rows(args.nu, args.x, args.method, args.tol, args.order)
    _emit_rows(rows, args.format, args.out)
    return 0


def _bound_rows(nu: float, x: float, tol: float) -> list[dict]:
    report = evaluate_all(nu, x, tol)
    return [{"nu": report.nu, "x": report.x, "bound_id": b.bound_id,
             "side": b.side, "value": b.value, "delta": report.delta,
             "margin": b.margin, "satisfied": b.satisfied}
            for b in report.bounds]


def cmd_bounds(args) -> int:
    if args.grid == "default":
        nus, xs = default_grid(args.seed).axes()
        rows = []
        for nu in nus:
            for x in xs:
                rows.extend(_bound_rows(nu, x, args.tol))
    elif args.nu is not None and args.x is not None:
        rows = _bound_rows(args.nu, args.x, args.tol)
    else:
        raise DomainError("bounds needs --nu and --x, or --grid default")
    _emit_rows(rows, args.format, args.out)
    return 0


def _grid_dict(grid: GridSpec) -> dict:
    return {"nu_values": list(grid.nu_values), "x_values": list(grid.x_values),
            "random_count": grid.random_count, "seed": grid.seed,
            "x_range": list(grid.x_range),
            "nu_range": None if grid.nu_range is None else list(grid.nu_range)}


def _certify_payload(suite: str, grid: GridSpec, tol: float, order: int,
                     reports: list[CertificationReport]) -> dict:
    results = []
    failures = []
    for r in reports:
        results.append({"property_id": r.property_id, "points": r.points,
                        "failure_count": len(r.failures),
                        "worst_margin": r.worst_margin,
                        "worst_witness": list(r.worst_witness),
                        "tolerance": r.tolerance})
        for f in r.failures:
            failures.append({"property_id": r.property_id, "nu": f.nu,
                             "x": f.x, "margin": f.margin,
                             "diagnostics": f.diagnostics})
    return {"suite": suite, "grid": _grid_dict(grid),
            "tolerances": {"tol": tol, "order": order},
            "results": results, "failures": failures}


def cmd_certify(args) -> int:
    grid = default_grid(args.seed)
    if args.suite == "zeros" and args.nu is not None and args.x is not None:
        reports = [certify_zero_sums(args.nu, args.x, args.count)]
    else:
        names = SUITE_NAMES if args.suite == "all" else (args.suite,)
        reports = run_suite(names, grid, args.tol, args.order)

    payload = _certify_payload(args.suite, grid, args.tol, args.order, reports)
    if args.format == "json":
        text = render_json(payload) + "\n"
    else:
        text = render_csv([{"property_id": r["property_id"],
                            "points": r["points"],
                            "failure_count": r["failure_count"],
                            "worst_margin": r["worst_margin"],
                            "worst_nu": r["worst_witness"][0],
                            "worst_x": r["worst_witness"][1]}
                           for r in payload["results"]])
    _emit(text, args.out)

    checks = sum(r.points for r in reports)
    bad = sum(len(r.failures) for r in reports)
    summary = (f"certify {args.suite}: {len(reports)} reports, "
               f"{checks} checks, {bad} failures\n")
    if args.out:
        sys.stdout.write(summary)
    else:
        sys.stderr.write(summary)
    return 4 if bad else 0


def _table_rows(args) -> list[dict]:
    if args.kind == "tcoeff":
        ns = parse_int_range(args.n)
        ms = parse_int_range(args.m)
        return [{"n": n, "m": m, "value": t_coefficient(n, m)}
                for n in ns for m in ms]
    if args.kind == "rho":
        return [{"n": n, "peak_m": 2 * n * n - 1, "value": rho(n)}
                for n in parse_int_range(args.n)]
    if args.kind == "asymp-n":
        rows = []
        for n in parse_int_range(args.n):
            exact = delta_series_integer(n, args.x, args.tol).value
            approx = delta_large_n(n, args.x)
            rows.append({"n": n, "x": args.x, "exact": exact,
                         "approx": approx, "ratio": exact / approx})
        return rows
    # asymp-nu: the exponent-mode adjudication table
    rows = []
    modes = ("as_printed", "squared") if args.mode == "both" else (args.mode,)
    for nu in parse_float_list(args.nu):
        exact = delta_series_real(nu, args.x, args.tol).value
        row = {"nu": nu, "x": args.x, "exact": exact}
        for mode in modes:
            approx = delta_large_nu(nu, args.x, mode)
            row[f"approx_{mode}"] = approx
            row[f"ratio_{mode}"] = exact / approx
        rows.append(row)
    return rows


def cmd_table(args) -> int:
    rows = _table_rows(args)
    _emit_rows(rows, args.format, args.out)
    return 0


def cmd_zeros(args) -> int:
    zeros = bessel_j_zeros(args.nu, args.count)
    rows = [{"nu": args.nu, "k": k + 1, "value": float(z)}
            for k, z in enumerate(zeros)]
    _emit_rows(rows, args.format, args.out)
    return 0


# ---- wiring -------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--order", type=int, default=64)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turanian",
        description="Evaluate, bound, and certify the Turanian of modified "
                    "Bessel functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the difference at one point")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=EVAL_METHODS, default="auto")
    _add_common(p)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("bounds", help="bound margins at a point or on a grid")
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--grid", choices=("default",), default=None)
    _add_common(p)
    p.set_defaults(run=cmd_bounds)

    p = sub.add_parser("certify", help="run certification suites")
    p.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    p.add_argument("--nu", type=float, default=None,
                   help="zero-sum suite: order of the single point")
    p.add_argument("--x", type=float, default=None,
                   help="zero-sum suite: argument of the single point")
    p.add_argument("--count", type=int, default=500,
                   help="zero-sum suite: number of zeros")
    _add_common(p)
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("table", help="coefficient and asymptotic-ratio tables")
    p.add_argument("--kind", choices=("tcoeff", "rho", "asymp-n", "asymp-nu"),
                   required=True)
    p.add_argument("--n", default="1..5", help="integer range, e.g. 1..8")
    p.add_argument("--m", default="0..10", help="integer range, e.g. 0..20")
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--nu", default="5,10,20,40", help="comma-separated orders")
    p.add_argument("--mode", choices=("as_printed", "squared", "both"),
                   default="both")
    _add_common(p)
    p.set_defaults(run=cmd_table)

    p = sub.add_parser("zeros", help="list zeros of the oscillatory function")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    _add_common(p)
    p.set_defaults(run=cmd_zeros)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ConvergenceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
