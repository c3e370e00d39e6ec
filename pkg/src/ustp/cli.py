"""Command-line interface: solve a model file or sweep the weight grid.

Exit codes: 0 success, 1 usage error, 2 unreadable/invalid model file,
3 infeasible model, 4 solver hit its iteration cap before converging.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .errors import InfeasibleModelError, InvalidModelError
from .modelfile import load_model, resolve_model_path, write_lp
from .pareto import FrontierPoint, sweep
from .scalarize import (
    Method,
    SolveReport,
    SolveStatus,
    WeightVector,
    ideal_point,
    solve_distance,
    solve_weighted,
)
from .transform import DeterministicModel, transform

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LOAD = 2
EXIT_INFEASIBLE = 3
EXIT_NO_CONVERGENCE = 4

_FORMATS = ("table", "json", "csv")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse defaults to exit status 2 on bad flags; usage errors are 1 here
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ustp",
        description=(
            "Plan multi-item solid transportation under uncertainty: convert "
            "chance constraints to quantile bounds and optimize expected costs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one scalarized problem")
    solve.add_argument("--model", required=True, help="model JSON file (or bundled name)")
    solve.add_argument(
        "--method", required=True, choices=[m.value for m in Method],
        help="weighted: minimize a weighted sum; distance: minimize distance to the ideal point",
    )
    solve.add_argument("--weights", help="comma-separated objective weights (weighted only)")
    solve.add_argument("--tol", type=float, default=None,
                       help="convergence gap for the distance method (default 1e-4)")
    solve.add_argument("--max-oracle-calls", type=int, default=None,
                       help="iteration cap for the distance method (default 100000)")
    solve.add_argument("--format", choices=_FORMATS, default="table")
    solve.add_argument("--export-lp", metavar="PATH",
                       help="also write the deterministic constraints as an LP text file")

    swp = sub.add_parser("sweep", help="trace the objective trade-off over a weight grid")
    swp.add_argument("--model", required=True, help="model JSON file (or bundled name)")
    swp.add_argument("--steps", required=True, type=int, help="number of grid weights (>= 2)")
    swp.add_argument("--format", choices=_FORMATS, default="table")
    return parser


def _parse_weights(raw: str, k: int) -> WeightVector:
    try:
        values = tuple(float(part) for part in raw.split(","))
    except ValueError:
        raise _UsageError(f"--weights must be comma-separated numbers, got {raw!r}")
    if len(values) != k:
        raise _UsageError(f"model has {k} objectives but --weights gives {len(values)}")
    try:
        return WeightVector(values)
    except ValueError as exc:
        raise _UsageError(str(exc))


def _fmt3(v: float) -> str:
    return f"{float(v):.3f}"


def _full(v: float) -> str:
    return format(float(v), ".17g")


def _nonzero_routes(det: DeterministicModel, report: SolveReport):
    flat = det.flatten(report.x)
    for name, value in zip(det.column_names(), flat):
        if value > 1e-9:
            yield name, float(value)


def _solve_table(det: DeterministicModel, report: SolveReport) -> str:
    lines = [f"method: {report.method.value}", f"status: {report.status.value}"]
    if report.weights is not None:
        lines.append("weights: " + ", ".join(_fmt3(v) for v in report.weights.values))
    if report.ideal is not None:
        lines.append("ideal: " + ", ".join(_fmt3(v) for v in report.ideal.e_star))
    lines.append(f"scalar value: {_fmt3(report.scalar_value)}")
    for t, v in enumerate(report.objective_values):
        lines.append(f"E[f{t + 1}]: {_fmt3(v)}")
    lines.append(f"iterations: {report.iterations}")
    if report.message:
        lines.append(f"note: {report.message}")
    routes = list(_nonzero_routes(det, report))
    lines.append("shipments (nonzero):")
    width = max((len(name) for name, _ in routes), default=5)
    lines.append(f"  {'route'.ljust(width)}  quantity")
    for name, value in routes:
        lines.append(f"  {name.ljust(width)}  {_fmt3(value)}")
    return "\n".join(lines) + "\n"


def _solve_json(report: SolveReport) -> str:
    doc = {
        "method": report.method.value,
        "status": report.status.value,
        "scalar_value": report.scalar_value,
        "objective_values": list(report.objective_values),
        "iterations": report.iterations,
        "x": report.x.x.tolist(),
    }
    if report.weights is not None:
        doc["weights"] = list(report.weights.values)
    if report.ideal is not None:
        doc["ideal"] = list(report.ideal.e_star)
    if report.message:
        doc["message"] = report.message
    return json.dumps(doc, indent=2) + "\n"


def _solve_csv(det: DeterministicModel, report: SolveReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    writer.writerow(["method", report.method.value])
    writer.writerow(["status", report.status.value])
    if report.weights is not None:
        for t, v in enumerate(report.weights.values):
            writer.writerow([f"lambda{t + 1}", _full(v)])
    if report.ideal is not None:
        for t, v in enumerate(report.ideal.e_star):
            writer.writerow([f"ideal_f{t + 1}", _full(v)])
    writer.writerow(["scalar_value", _full(report.scalar_value)])
    for t, v in enumerate(report.objective_values):
        writer.writerow([f"E_f{t + 1}", _full(v)])
    writer.writerow(["iterations", report.iterations])
    for name, value in _nonzero_routes(det, report):
        writer.writerow([name, _full(value)])
    return buf.getvalue()


def _sweep_table(points: list[FrontierPoint]) -> str:
    k = len(points[0].weights) if points else 0
    header = (
        [f"lambda{t + 1}" for t in range(k)]
        + [f"E[f{t + 1}]" for t in range(k)]
        + ["scalar", "dominated"]
    )
    rows = [header]
    for pt in points:
        rows.append(
            [_fmt3(v) for v in pt.weights.values]
            + [_fmt3(v) for v in pt.objective_values]
            + [_fmt3(pt.scalar_value), "yes" if pt.dominated else "no"]
        )
    widths = [max(len(row[c]) for row in rows) for c in range(len(header))]
    out = []
    for row in rows:
        out.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(out) + "\n"


def _sweep_json(points: list[FrontierPoint]) -> str:
    doc = [
        {
            "weights": list(pt.weights.values),
            "objective_values": list(pt.objective_values),
            "scalar_value": pt.scalar_value,
            "dominated": pt.dominated,
            "x": pt.x.x.tolist(),
        }
        for pt in points
    ]
    return json.dumps(doc, indent=2) + "\n"


def _sweep_csv(points: list[FrontierPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    k = len(points[0].weights) if points else 0
    writer.writerow(
        [f"lambda{t + 1}" for t in range(k)]
        + [f"E_f{t + 1}" for t in range(k)]
        + ["scalar", "dominated"]
    )
    for pt in points:
        writer.writerow(
            [_full(v) for v in pt.weights.values]
            + [_full(v) for v in pt.objective_values]
            + [_full(pt.scalar_value), "yes" if pt.dominated else "no"]
        )
    return buf.getvalue()


def _cmd_solve(args) -> int:
    model = load_model(resolve_model_path(args.model))
    det = transform(model)

    if args.method == Method.WEIGHTED.value:
        if args.weights is None:
            raise _UsageError("--weights is required with --method weighted")
        if args.tol is not None:
            raise _UsageError("--tol applies only to --method distance")
        if args.max_oracle_calls is not None:
            raise _UsageError("--max-oracle-calls applies only to --method distance")
        w = _parse_weights(args.weights, det.K)
        report = solve_weighted(det, w)
        export_objective = np.zeros(det.n_cols)
        for t, lam in enumerate(w.values):
            export_objective += lam * det.objective_vector(t)
        export_comment = "weighted-sum objective, weights " + ", ".join(
            _full(v) for v in w.values
        )
    else:
        if args.weights is not None:
            raise _UsageError("--weights applies only to --method weighted")
        tol = 1e-4 if args.tol is None else args.tol
        if not tol > 0.0:
            raise _UsageError(f"--tol must be positive, got {tol}")
        cap = args.max_oracle_calls
        if cap is not None and cap < 1:
            raise _UsageError(f"--max-oracle-calls must be >= 1, got {cap}")
        ideal = ideal_point(det)
        kwargs = {} if cap is None else {"max_oracle_calls": cap}
        report = solve_distance(det, ideal, tol, **kwargs)
        export_objective = sum(
            det.objective_vector(t) for t in range(det.K)
        ) / det.K
        export_comment = (
            "constraints of the distance run; linear objective shown is the "
            "uniform weighting (the distance objective is quadratic)"
        )

    if args.export_lp:
        write_lp(det, export_objective, args.export_lp, comment=export_comment)

    if args.format == "table":
        sys.stdout.write(_solve_table(det, report))
    elif args.format == "json":
        sys.stdout.write(_solve_json(report))
    else:
        sys.stdout.write(_solve_csv(det, report))

    if report.status is SolveStatus.ITERATION_LIMIT:
        print(f"ustp: did not converge: {report.message}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.steps < 2:
        raise _UsageError(f"--steps must be >= 2, got {args.steps}")
    model = load_model(resolve_model_path(args.model))
    det = transform(model)
    points = sweep(det, args.steps)
    if args.format == "table":
        sys.stdout.write(_sweep_table(points))
    elif args.format == "json":
        sys.stdout.write(_sweep_json(points))
    else:
        sys.stdout.write(_sweep_csv(points))
    return EXIT_OK


def app(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        return _cmd_sweep(args)
    except _UsageError as exc:
        print(f"ustp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidModelError as exc:
        for diag in exc.diagnostics:
            print(f"ustp: {diag}", file=sys.stderr)
        return EXIT_LOAD
    except InfeasibleModelError as exc:
        print(f"ustp: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(app())
