"""Error tables, norms, convergence sweeps and the a-priori truncation bounds.

Convention for the curvature bound ``H``: it bounds ``|d^2 Y / d zeta^2|`` in the
canonical wavelet variable ``zeta = 2x/L``. Use :func:`canonical_H` to convert a
bound on ``|Y''(x)|`` over [0, L].
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .expansion import Solution, SolutionExpansion
from .problem_model import SingularProblem
from .quadrature import composite_nodes, gauss_chebyshev_rule, gauss_legendre_rule
from .residual_schemes import SchemeConfig, solve
from .wavelet_basis import BasisSpec, project, unflat_index

__all__ = [
    "ErrorTable",
    "error_table",
    "error_norms",
    "SweepRow",
    "convergence_sweep",
    "DecayCheck",
    "coefficient_decay_check",
    "canonical_H",
    "estimate_H",
    "resolution_factor",
    "tail_integral",
    "tail_integral_quad",
    "printed_tail_factor",
    "theoretical_bound",
    "weighted_truncation_error",
    "format_float",
]


def format_float(v: float) -> str:
    return format(float(v), ".17g")


@dataclass
class ErrorTable:
    rows: list[tuple[float, float, float]]  # (x, exact, approx)
    scheme: str = ""
    eta: int = 0
    problem_id: str = ""

    @property
    def abs_errors(self) -> np.ndarray:
        return np.array([abs(e - a) for _, e, a in self.rows])

    @property
    def max_error(self) -> float:
        return float(self.abs_errors.max()) if self.rows else 0.0

    def records(self) -> list[dict]:
        return [
            {"x": x, "exact": e, "approx": a, "abs_error": abs(e - a)}
            for x, e, a in self.rows
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "exact", "approx", "abs_error"])
        for r in self.records():
            w.writerow([format_float(r[k]) for k in ("x", "exact", "approx", "abs_error")])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "problem": self.problem_id,
            "scheme": self.scheme,
            "eta": self.eta,
            "rows": self.records(),
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _exact(problem: SingularProblem):
    if problem.exact is None:
        raise ValueError("problem has no exact solution")
    return problem.exact


def error_table(solution: Solution, problem: SingularProblem, points: Sequence[float],
                scheme: str = "", problem_id: str = "") -> ErrorTable:
    exact = _exact(problem)
    pts = np.asarray(points, dtype=float)
    if np.any((pts < 0) | (pts > problem.L)):
        raise ValueError(f"points must lie in [0, {problem.L}]")
    ex = exact(pts)
    ap = solution(pts)
    rows = [(float(x), float(e), float(a)) for x, e, a in zip(pts, ex, ap)]
    return ErrorTable(rows, scheme, solution.basis.eta, problem_id or problem.name)


def error_norms(solution: Solution, problem: SingularProblem, grid_n: int = 200,
                quad_order: int = 64) -> tuple[float, float]:
    """``(l2, linf)``: composite Gauss-Legendre L2 norm and max over ``grid_n`` uniform interior points."""
    exact = _exact(problem)
    L = problem.L
    grid = L * np.arange(1, grid_n + 1) / (grid_n + 1)
    linf = float(np.max(np.abs(exact(grid) - solution(grid))))
    xq, wq = composite_nodes(solution.basis.breakpoints, gauss_legendre_rule(quad_order))
    l2 = float(math.sqrt(np.dot(wq, (exact(xq) - solution(xq)) ** 2)))
    return l2, linf


@dataclass
class SweepRow:
    eta: int
    linf: float = float("nan")
    l2: float = float("nan")
    converged: bool = False
    iterations: int = 0
    error: str = ""


def convergence_sweep(problem: SingularProblem, scheme: str, etas: Sequence[int], k: int = 1,
                      config: SchemeConfig | None = None, grid_n: int = 200) -> list[SweepRow]:
    """Solve at each eta (with ``M = eta / 2^(k-1)``) and record the errors; failures stay in-row."""
    if list(etas) != sorted(etas):
        raise ValueError("etas must be ascending")
    base = config or SchemeConfig(scheme)
    cfg = SchemeConfig(scheme, base.quad_order, base.singularity_treatment, base.newton)
    rows = []
    for eta in etas:
        row = SweepRow(int(eta))
        try:
            n_sub = 2 ** (k - 1)
            if eta % n_sub:
                raise ValueError(f"eta={eta} not divisible by 2^(k-1)={n_sub}")
            result = solve(problem, BasisSpec(k, eta // n_sub, problem.L), cfg)
            row.converged = result.converged
            row.iterations = result.report.iterations
            row.l2, row.linf = error_norms(result.solution, problem, grid_n)
        except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
            row.error = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    return rows


def canonical_H(H_x: float, L: float) -> float:
    """Convert a bound on ``|Y''(x)|`` over [0, L] to the canonical variable."""
    return H_x * (L / 2.0) ** 2


def estimate_H(fn: Callable[[np.ndarray], np.ndarray], L: float, n: int = 2001) -> float:
    """Finite-difference estimate of ``max |d^2 Y / d zeta^2|`` on [0, L] (canonical units)."""
    x = np.linspace(0.0, L, n)
    h = x[1] - x[0]
    y = np.asarray(fn(x), dtype=float)
    d2 = (y[2:] - 2.0 * y[1:-1] + y[:-2]) / (h * h)
    return canonical_H(float(np.max(np.abs(d2))), L)


@dataclass
class DecayCheck:
    ok: bool
    margins: np.ndarray  # bound - |Lambda|, NaN where no bound applies (m < 2)
    bounds: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __bool__(self) -> bool:
        return self.ok


def coefficient_decay_check(lam, basis: BasisSpec, H: float) -> DecayCheck:
    """Check ``|Lambda_{s,m}| <= H sqrt(pi) / (s^(5/2) (m^2 - 1))`` for every m >= 2."""
    lam = np.asarray(lam, dtype=float)
    bounds = np.full(basis.eta, np.nan)
    for u in range(1, basis.eta + 1):
        s, m = unflat_index(u, basis)
        if m >= 2:
            bounds[u - 1] = H * math.sqrt(math.pi) / (s**2.5 * (m * m - 1))
    margins = bounds - np.abs(lam)
    checked = ~np.isnan(margins)
    ok = bool(np.all(margins[checked] >= 0.0))
    return DecayCheck(ok, margins, bounds)


def resolution_factor(k: int) -> float:
    """``int_{2^(k-1)}^inf 2^-(5z - 5) dz = 1 / (2^(5(2^(k-1) - 1)) * 5 ln 2)``."""
    return 1.0 / (2.0 ** (5 * (2 ** (k - 1) - 1)) * 5.0 * math.log(2.0))


def tail_integral(M: int) -> float:
    """``int_{M-1}^inf dz / (z^2 - 1)^2`` via its partial-fraction antiderivative."""
    if M <= 2:
        raise ValueError(f"tail integral needs M > 2, got {M}")
    a = float(M - 1)
    return 0.25 * (2.0 * a / (a * a - 1.0) - math.log((a + 1.0) / (a - 1.0)))


def tail_integral_quad(M: int) -> float:
    if M <= 2:
        raise ValueError(f"tail integral needs M > 2, got {M}")
    val, _ = quad(lambda z: 1.0 / (z * z - 1.0) ** 2, M - 1.0, math.inf, epsabs=1e-15, epsrel=1e-13)
    return val


def printed_tail_factor(M: int) -> float:
    """The closed form as published; equals ``-tail_integral(M)``, i.e. it carries a sign error."""
    lnM, lnM2 = math.log(M), math.log(M - 2)
    num = (M * M - 2 * M) * lnM - M * M * lnM2 + (2 * lnM2 - 2) * M + 2
    return num / (4.0 * M * (M - 2))


def theoretical_bound(H: float, k: int, M: int) -> float:
    """``H sqrt(pi * A(k) * I(M))`` with the positive tail integral."""
    if M <= 2:
        raise ValueError(f"error bound stated for M > 2, got {M}")
    if H <= 0:
        raise ValueError("H must be positive")
    return H * math.sqrt(math.pi * resolution_factor(k) * tail_integral(M))


def weighted_truncation_error(fn: Callable[[np.ndarray], np.ndarray], basis: BasisSpec,
                              quad_order: int = 512) -> float:
    """``sqrt(sum_s int (Y - Ybar)^2 w_s dzeta)`` for the projection ``Ybar`` of ``fn``.

    On subinterval s the substitution ``2^k zeta - s_hat = 2 cos d`` turns the
    weighted integral into ``2^-k int_0^pi err^2 dd``.
    """
    lam = project(fn, basis)
    approx = SolutionExpansion(basis, lam)
    rule = gauss_chebyshev_rule(quad_order)
    total = 0.0
    for s in range(1, basis.n_sub + 1):
        zeta = (2.0 * rule.nodes + 2.0 * (2.0 * s - 1.0)) / 2.0**basis.k
        x = zeta * basis.L / 2.0
        err = np.asarray(fn(x), dtype=float) - approx(x)
        total += 2.0 ** (-basis.k) * np.dot(rule.weights, err * err)
    return math.sqrt(total)
