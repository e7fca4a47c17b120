"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import reference_data as ref
from .analysis import convergence_sweep, error_table, format_float
from .nonlinear_solver import NewtonConfig
from .operational_matrix import build_D
from .problem_model import ProblemValidationError, builtin_problem, load_problem, problem_to_dict
from .residual_schemes import SCHEMES, SchemeConfig, collocation_nodes, solve
from .wavelet_basis import BasisSpec

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).replace(microsecond=0).isoformat()


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    return v


def _write_manifest(path: Path, manifest: dict) -> None:
    manifest = dict(manifest)
    manifest["timestamp"] = _timestamp()
    manifest["outputs"] = sorted(str(p) for p in manifest.get("outputs", []))
    _write_text(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _resolve_problem(spec: str):
    if spec.startswith("builtin:"):
        try:
            return builtin_problem(int(spec.split(":", 1)[1])), spec
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"problem file not found: {spec}")
    try:
        return load_problem(path), str(path)
    except (ProblemValidationError, OSError) as exc:
        raise UsageError(f"invalid problem file {spec}: {exc}") from None


def _basis_from_args(args, L: float) -> BasisSpec:
    if args.eta is not None:
        if args.k not in (None, 1) or args.M is not None:
            raise UsageError("--eta is shorthand for k=1, M=eta; do not combine with --k/--M")
        return BasisSpec(1, args.eta, L)
    if args.M is None:
        raise UsageError("give either --eta or --M (with optional --k)")
    return BasisSpec(args.k or 1, args.M, L)


def _scheme_config(args) -> SchemeConfig:
    newton = NewtonConfig(tol=args.tol, max_iter=args.max_iter, damping=not args.no_damping)
    return SchemeConfig(args.scheme, args.quad_order, args.treatment, newton)


def _config_echo(cfg: SchemeConfig, treatment: str) -> dict:
    return {
        "scheme": cfg.scheme,
        "quad_order": cfg.quad_order,
        "singularity_treatment": treatment,
        "tol": cfg.newton.tol,
        "max_iter": cfg.newton.max_iter,
        "damping": cfg.newton.damping,
    }


def cmd_solve(args) -> int:
    problem, source = _resolve_problem(args.problem)
    basis = _basis_from_args(args, problem.L)
    cfg = _scheme_config(args)
    result = solve(problem, basis, cfg)
    sol = result.solution
    points = args.points if args.points else [problem.L * i / 10 for i in range(1, 11)]
    if any(p < 0 or p > problem.L for p in points):
        raise UsageError(f"--points must lie in [0, {problem.L}]")
    out = Path(args.out)
    if problem.exact is not None:
        table = error_table(sol, problem, points, cfg.scheme, source)
        header = ["x", "approx", "exact", "abs_error"]
        rows = [[x, a, e, abs(e - a)] for (x, e, a) in table.rows]
    else:
        header = ["x", "approx"]
        rows = [[float(x), float(a)] for x, a in zip(points, sol(np.asarray(points, dtype=float)))]
    _write_text(out, _csv_text(header, rows))
    manifest_path = out.with_suffix(".manifest.json")
    _write_manifest(manifest_path, {
        "command": "solve",
        "problem": source,
        "problem_definition": problem_to_dict(problem),
        "basis": {"k": basis.k, "M": basis.M, "L": basis.L, "eta": basis.eta},
        "config": _config_echo(cfg, result.system.treatment),
        "solver": result.report.as_dict(),
        "coefficients": [format_float(c) for c in result.coeffs],
        "outputs": [out, manifest_path],
    })
    print(f"wrote {out} ({'converged' if result.converged else 'NOT converged'}, "
          f"{result.report.iterations} Newton iterations)")
    return EXIT_OK if result.converged else EXIT_NONCONVERGED


def _table_runs(table: int):
    if table == 1:
        for pid, (eta, data) in ref.TABLE1_RUNS.items():
            published = {s: {x: v[i + 1] for x, v in data.items()} for i, s in enumerate(SCHEMES)}
            yield pid, eta, data, published, ref.TABLE1_TOLERANCES[pid], None
    else:
        for pid, (eta, data, other) in ref.TABLE2_RUNS.items():
            published = {"collocation": {x: v[2] for x, v in data.items()}}
            tol = {"collocation": ref.TABLE2_COLLOCATION_TOLERANCE,
                   "tau": ref.EXACT_RECOVERY_TOLERANCE, "galerkin": ref.EXACT_RECOVERY_TOLERANCE}
            yield pid, eta, data, published, tol, (other, {x: v[1] for x, v in data.items()})


def cmd_reproduce(args) -> int:
    out_dir = Path(args.out)
    outputs, summary, all_converged = [], [], True
    for pid, eta, data, published, tolerances, other in _table_runs(args.table):
        problem = builtin_problem(pid)
        points = sorted(data)
        basis = BasisSpec(1, eta, problem.L)
        columns = {"x": points, "exact": list(problem.exact(np.array(points))),
                   "published_exact": [data[x][0] for x in points]}
        for scheme in SCHEMES:
            result = solve(problem, basis, SchemeConfig(scheme))
            all_converged &= result.converged
            table = error_table(result.solution, problem, points, scheme, f"builtin:{pid}")
            errs = table.abs_errors
            columns[f"approx_{scheme}"] = [a for _, _, a in table.rows]
            columns[f"abs_error_{scheme}"] = list(errs)
            if scheme in published:
                columns[f"published_error_{scheme}"] = [published[scheme][x] for x in points]
            published_max = max(published[scheme].values()) if scheme in published else None
            summary.append({
                "example": pid, "scheme": scheme, "eta": eta,
                "max_abs_error": float(errs.max()), "published_max_error": published_max,
                "tolerance": tolerances[scheme], "pass": bool(errs.max() <= tolerances[scheme]),
                "converged": result.converged,
            })
        if other is not None:
            columns[f"published_error_{other[0]}"] = [other[1][x] for x in points]
        stem = f"table{args.table}_example{pid}"
        if args.format == "csv":
            path = out_dir / f"{stem}.csv"
            header = list(columns)
            _write_text(path, _csv_text(header, [[columns[h][i] for h in header] for i in range(len(points))]))
        else:
            path = out_dir / f"{stem}.json"
            records = [{h: float(columns[h][i]) for h in columns} for i in range(len(points))]
            _write_text(path, json.dumps({"example": pid, "eta": eta, "rows": records}, indent=2, sort_keys=True) + "\n")
        outputs.append(path)

    keys = ["example", "scheme", "eta", "max_abs_error", "published_max_error", "tolerance", "pass", "converged"]
    if args.format == "csv":
        summary_path = out_dir / f"table{args.table}_summary.csv"
        _write_text(summary_path, _csv_text(keys, [[row[k] for k in keys] for row in summary]))
    else:
        summary_path = out_dir / f"table{args.table}_summary.json"
        _write_text(summary_path, json.dumps(summary, indent=2, sort_keys=True) + "\n")
    outputs.append(summary_path)
    manifest_path = out_dir / f"table{args.table}_manifest.json"
    _write_manifest(manifest_path, {
        "command": "reproduce", "table": args.table, "format": args.format,
        "outputs": outputs + [manifest_path],
    })
    for row in summary:
        status = "pass" if row["pass"] else "FAIL"
        published_max = "n/a" if row["published_max_error"] is None else f"{row['published_max_error']:.2e}"
        print(f"example {row['example']} {row['scheme']:<12} eta={row['eta']:<3} "
              f"max|err|={row['max_abs_error']:.3e} (published {published_max}, "
              f"tol {row['tolerance']:.0e}) {status}")
    return EXIT_OK if all_converged else EXIT_NONCONVERGED


def cmd_convergence(args) -> int:
    problem, source = _resolve_problem(args.problem)
    cfg = _scheme_config(args)
    etas = sorted(args.etas)
    rows = convergence_sweep(problem, args.scheme, etas, k=args.k or 1, config=cfg)
    out = Path(args.out)
    header = ["eta", "linf", "l2", "converged", "iterations", "error"]
    _write_text(out, _csv_text(header, [[r.eta, r.linf, r.l2, r.converged, r.iterations, r.error] for r in rows]))
    manifest_path = out.with_suffix(".manifest.json")
    _write_manifest(manifest_path, {
        "command": "convergence", "problem": source, "problem_definition": problem_to_dict(problem),
        "k": args.k or 1, "etas": etas, "config": _config_echo(cfg, cfg.treatment_for(problem)),
        "outputs": [out, manifest_path],
    })
    for r in rows:
        print(f"eta={r.eta:<4} linf={r.linf:.3e} l2={r.l2:.3e} {'' if r.converged else 'NOT converged ' + r.error}")
    ok = all(r.converged and not r.error for r in rows)
    return EXIT_OK if ok else EXIT_NONCONVERGED


def cmd_basis(args) -> int:
    basis = BasisSpec(args.k, args.M, args.L)
    out_dir = Path(args.out)
    both = not (args.dump_opmat or args.dump_nodes)
    outputs = []
    if args.dump_opmat or both:
        D = build_D(basis).entries
        path = out_dir / f"opmat_k{basis.k}_M{basis.M}.csv"
        _write_text(path, _csv_text([f"v{j + 1}" for j in range(basis.eta)], [list(map(float, row)) for row in D]))
        outputs.append(path)
    if args.dump_nodes or both:
        if basis.eta < 3:
            if args.dump_nodes:
                raise UsageError(f"collocation nodes need eta >= 3, got {basis.eta}")
        else:
            x = collocation_nodes(basis)
            path = out_dir / f"nodes_k{basis.k}_M{basis.M}.csv"
            _write_text(path, _csv_text(["index", "x", "zeta"], [[i + 1, float(v), float(2 * v / basis.L)] for i, v in enumerate(x)]))
            outputs.append(path)
    manifest_path = out_dir / f"basis_k{basis.k}_M{basis.M}.manifest.json"
    _write_manifest(manifest_path, {
        "command": "basis", "basis": {"k": basis.k, "M": basis.M, "L": basis.L, "eta": basis.eta},
        "outputs": outputs + [manifest_path],
    })
    for p in outputs:
        print(f"wrote {p}")
    return EXIT_OK


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", required=True, help="builtin:N (N = 1..5) or a JSON problem file")
    p.add_argument("--scheme", required=True, choices=SCHEMES)
    p.add_argument("--treatment", choices=("raw", "zeta", "multiply_by_zeta"), default=None,
                   help="singularity treatment for Tau/Galerkin integrals (default: zeta when mu != 0)")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--no-damping", action="store_true")
    p.add_argument("--quad-order", type=int, default=64)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vlwave", description="Vieta-Lucas wavelet solvers for singular ODEs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one problem")
    _add_solver_flags(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--eta", type=int, default=None, help="shorthand for k=1, M=eta")
    p.add_argument("--out", required=True, help="solution CSV path; the manifest is written next to it")
    p.add_argument("--points", type=_float_list, default=None, help="comma-separated evaluation points")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reproduce", help="rerun a published error table")
    p.add_argument("--table", type=int, required=True, choices=(1, 2))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("convergence", help="error versus eta sweep")
    _add_solver_flags(p)
    p.add_argument("--etas", type=_int_list, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--out", default="convergence.csv")
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("basis", help="dump the operational matrix and collocation nodes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--L", type=float, default=2.0)
    p.add_argument("--dump-opmat", action="store_true")
    p.add_argument("--dump-nodes", action="store_true")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_basis)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"vlwave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"vlwave: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (ValueError, OSError) as exc:
        print(f"vlwave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
