"""Collocation, Tau and Galerkin discretisations of the singular ODE.

Each scheme turns a problem and a basis into an :class:`AlgebraicSystem` of exactly
``eta`` equations in the ``eta`` wavelet coefficients.

Under the log substitution (``Y = exp(V)``, for ``f = aY + bY ln Y`` and ``g = 0``)
the system is posed for ``V``:
``V'' + V'^2 + (mu/x) V' + a + b V = 0`` with conditions carried over to ``V``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .expansion import Decoration, Solution, SolutionExpansion, trial_matrices
from .nonlinear_solver import NewtonConfig, NewtonReport, newton_solve
from .problem_model import Conditions, SingularProblem, log_form_coefficients
from .quadrature import composite_nodes, gauss_legendre_rule
from .vlp_core import vl_nodes
from .wavelet_basis import BasisSpec

__all__ = [
    "SCHEMES",
    "SingularPointError",
    "SchemeConfig",
    "AlgebraicSystem",
    "working_conditions",
    "residual_at",
    "collocation_nodes",
    "assemble_collocation",
    "assemble_tau",
    "galerkin_trial",
    "assemble_galerkin",
    "assemble",
    "initial_guess",
    "SolveResult",
    "solve",
]

SCHEMES = ("collocation", "tau", "galerkin")
_TREATMENTS = {"raw": "raw", "zeta": "zeta", "multiply_by_zeta": "zeta"}


class SingularPointError(ValueError):
    pass


@dataclass(frozen=True)
class SchemeConfig:
    """Scheme choice and numerical knobs.

    ``singularity_treatment`` is ``"raw"`` or ``"zeta"`` (multiply the residual by x
    inside Tau/Galerkin integrals). ``None`` picks ``"zeta"`` when mu != 0.
    """

    scheme: str = "collocation"
    quad_order: int = 64
    singularity_treatment: str | None = None
    newton: NewtonConfig = field(default_factory=NewtonConfig)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if self.singularity_treatment is not None:
            if self.singularity_treatment not in _TREATMENTS:
                raise ValueError(f"unknown singularity treatment {self.singularity_treatment!r}")
            object.__setattr__(self, "singularity_treatment", _TREATMENTS[self.singularity_treatment])
        if self.quad_order < 1:
            raise ValueError("quad_order must be positive")

    def treatment_for(self, problem: SingularProblem) -> str:
        if self.scheme == "collocation":
            return "raw"
        if self.singularity_treatment is not None:
            return self.singularity_treatment
        return "zeta" if problem.mu != 0.0 else "raw"


class _Equation:
    """Splits the residual into a coefficient-dependent operator and a fixed forcing."""

    def __init__(self, problem: SingularProblem):
        self.problem = problem
        self.mu = problem.mu
        self.log = problem.transform == "log"
        if self.log:
            self.a, self.b = log_form_coefficients(problem)

    def operator(self, x, y0, y1, y2):
        out = y2 + self.mu / x * y1 if self.mu != 0.0 else y2.copy()
        if self.log:
            return out + y1 * y1 + self.b * y0
        return out + self.problem.f(x, y0)

    def forcing(self, x):
        if self.log:
            return np.full_like(np.asarray(x, dtype=float), -self.a)
        return self.problem.g(np.asarray(x, dtype=float))


def working_conditions(problem: SingularProblem) -> Conditions:
    """Side conditions for the unknown actually expanded (``V`` under the log substitution)."""
    c = problem.conditions
    if problem.transform != "log":
        return c
    if c.kind == "ivp":
        return Conditions("ivp", math.log(c.v0), c.v1 / c.v0)
    return Conditions("bvp", math.log(c.v0), math.log(c.v1))


def residual_at(lam, x, problem: SingularProblem, basis: BasisSpec, decoration: Decoration | None = None):
    """Pointwise residual ``R(x)`` of the expansion ``lam`` (of the working variable)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if problem.mu != 0.0 and np.any(xs == 0.0):
        raise SingularPointError("residual undefined at x = 0 when mu != 0")
    eq = _Equation(problem)
    lifts, mats = trial_matrices(xs, basis, decoration)
    lam = np.asarray(lam, dtype=float)
    y = [lifts[j] + mats[j] @ lam for j in range(3)]
    r = eq.operator(xs, *y) - eq.forcing(xs)
    return float(r[0]) if np.ndim(x) == 0 else r


@dataclass(frozen=True, eq=False)
class AlgebraicSystem:
    """``residual_map(lam) = operator_map(lam) - rhs``, always of length eta."""

    basis: BasisSpec
    problem: SingularProblem
    scheme: str
    treatment: str
    decoration: Decoration | None
    operator_map: Callable[[np.ndarray], np.ndarray]
    rhs: np.ndarray
    n_condition_rows: int
    nodes: np.ndarray | None = None

    def residual_map(self, lam) -> np.ndarray:
        return self.operator_map(np.asarray(lam, dtype=float)) - self.rhs

    __call__ = residual_map

    @property
    def size(self) -> int:
        return self.basis.eta

    def expansion(self, lam) -> SolutionExpansion:
        return SolutionExpansion(self.basis, lam, self.decoration)

    def solution(self, lam) -> Solution:
        return Solution(self.expansion(lam), self.problem.transform)


def collocation_nodes(basis: BasisSpec) -> np.ndarray:
    """Interior extrema of ``VL_{eta-1}`` mapped onto (0, L), in decreasing order.

    The extremum at -2 (which maps to the singular end x = 0) is dropped.
    """
    eta = basis.eta
    if eta < 3:
        raise ValueError(f"collocation needs eta >= 3, got {eta}")
    t = vl_nodes(eta - 1, "extrema")[:-1]
    x = basis.L * (t + 2.0) / 4.0
    inner = basis.breakpoints[1:-1]
    if inner.size:
        nudge = 1e-12 * basis.L
        for b in inner:
            x = np.where(np.abs(x - b) < nudge, b + nudge, x)
    return x


def _condition_rows(basis: BasisSpec, cond: Conditions) -> tuple[np.ndarray, np.ndarray]:
    pts = np.array([0.0, basis.L])
    _, mats = trial_matrices(pts, basis, None)
    if cond.kind == "ivp":
        rows = np.vstack([mats[0][0], mats[1][0]])
    else:
        rows = np.vstack([mats[0][0], mats[0][1]])
    return rows, np.array([cond.v0, cond.v1])


def _pointwise(eq: _Equation, x, lifts, mats):
    def op(lam):
        return eq.operator(x, *(lifts[j] + mats[j] @ lam for j in range(3)))

    return op


def assemble_collocation(problem: SingularProblem, basis: BasisSpec, config: SchemeConfig | None = None) -> AlgebraicSystem:
    eq = _Equation(problem)
    nodes = collocation_nodes(basis)
    lifts, mats = trial_matrices(nodes, basis, None)
    interior = _pointwise(eq, nodes, lifts, mats)
    cond_rows, cond_rhs = _condition_rows(basis, working_conditions(problem))

    def operator_map(lam):
        return np.concatenate([interior(lam), cond_rows @ lam])

    rhs = np.concatenate([eq.forcing(nodes), cond_rhs])
    return AlgebraicSystem(basis, problem, "collocation", "raw", None, operator_map, rhs, 2, nodes)


def _quadrature(basis: BasisSpec, config: SchemeConfig):
    return composite_nodes(basis.breakpoints, gauss_legendre_rule(config.quad_order))


def _check_quad(basis: BasisSpec, config: SchemeConfig) -> None:
    if config.quad_order < basis.M:
        raise ValueError(f"quad_order={config.quad_order} must be at least M={basis.M}")


def assemble_tau(problem: SingularProblem, basis: BasisSpec, config: SchemeConfig | None = None) -> AlgebraicSystem:
    """Rows ``int_0^L Upsilon_i R~ dx`` for the first eta - 2 wavelets, then two condition rows."""
    config = config or SchemeConfig("tau")
    _check_quad(basis, config)
    if basis.eta < 3:
        raise ValueError(f"Tau needs eta >= 3, got {basis.eta}")
    treatment = config.treatment_for(problem)
    eq = _Equation(problem)
    xq, wq = _quadrature(basis, config)
    lifts, mats = trial_matrices(xq, basis, None)
    scale = wq * xq if treatment == "zeta" else wq
    tests = scale[:, None] * mats[0][:, : basis.eta - 2]
    pointwise = _pointwise(eq, xq, lifts, mats)
    cond_rows, cond_rhs = _condition_rows(basis, working_conditions(problem))

    def operator_map(lam):
        return np.concatenate([tests.T @ pointwise(lam), cond_rows @ lam])

    rhs = np.concatenate([tests.T @ eq.forcing(xq), cond_rhs])
    return AlgebraicSystem(basis, problem, "tau", treatment, None, operator_map, rhs, 2)


def galerkin_trial(problem: SingularProblem) -> Decoration:
    """Trial wrapper that satisfies the (working) side conditions for every coefficient vector."""
    c = working_conditions(problem)
    return Decoration(c.kind, c.v0, c.v1, problem.L)


def assemble_galerkin(problem: SingularProblem, basis: BasisSpec, config: SchemeConfig | None = None) -> AlgebraicSystem:
    """Rows ``int_0^L nu Upsilon_i R~ dx`` for all eta wavelets; no condition rows."""
    config = config or SchemeConfig("galerkin")
    _check_quad(basis, config)
    treatment = config.treatment_for(problem)
    eq = _Equation(problem)
    deco = galerkin_trial(problem)
    xq, wq = _quadrature(basis, config)
    lifts, mats = trial_matrices(xq, basis, deco)
    _, plain = trial_matrices(xq, basis, None)
    scale = wq * deco.nu(xq, 0)
    if treatment == "zeta":
        scale = scale * xq
    tests = scale[:, None] * plain[0]
    pointwise = _pointwise(eq, xq, lifts, mats)

    def operator_map(lam):
        return tests.T @ pointwise(lam)

    rhs = tests.T @ eq.forcing(xq)
    return AlgebraicSystem(basis, problem, "galerkin", treatment, deco, operator_map, rhs, 0)


def assemble(problem: SingularProblem, basis: BasisSpec, config: SchemeConfig) -> AlgebraicSystem:
    builder = {"collocation": assemble_collocation, "tau": assemble_tau, "galerkin": assemble_galerkin}[config.scheme]
    return builder(problem, basis, config)


def initial_guess(system: AlgebraicSystem) -> np.ndarray:
    """Zero, or a least-squares fit of the problem's ``init`` profile into the trial space."""
    problem, basis = system.problem, system.basis
    if problem.init is None:
        return np.zeros(basis.eta)
    rule = gauss_legendre_rule(max(2 * basis.M, 8))
    x, _ = composite_nodes(basis.breakpoints, rule)
    target = problem.init(x)
    if problem.transform == "log":
        target = np.log(target)
    lifts, mats = trial_matrices(x, basis, system.decoration)
    lam, *_ = np.linalg.lstsq(mats[0], target - lifts[0], rcond=None)
    return lam


@dataclass(eq=False)
class SolveResult:
    coeffs: np.ndarray
    report: NewtonReport
    system: AlgebraicSystem

    @property
    def solution(self) -> Solution:
        return self.system.solution(self.coeffs)

    @property
    def converged(self) -> bool:
        return self.report.converged


def solve(problem: SingularProblem, basis: BasisSpec, config: SchemeConfig | None = None, init=None) -> SolveResult:
    """Assemble the chosen scheme and run Newton from ``init`` (default :func:`initial_guess`)."""
    config = config or SchemeConfig()
    system = assemble(problem, basis, config)
    start = initial_guess(system) if init is None else np.asarray(init, dtype=float)
    lam, report = newton_solve(system, start, config.newton)
    return SolveResult(lam, report, system)
