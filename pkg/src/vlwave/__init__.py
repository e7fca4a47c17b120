"""Vieta-Lucas wavelet solvers for singular second-order ODEs."""

from __future__ import annotations

from .analysis import (
    ErrorTable,
    coefficient_decay_check,
    convergence_sweep,
    error_norms,
    error_table,
    theoretical_bound,
)
from .nonlinear_solver import NewtonConfig, NewtonReport, newton_solve
from .operational_matrix import build_D, build_F, derivative_matrix
from .problem_model import Conditions, SingularProblem, builtin_problem, load_problem
from .residual_schemes import SCHEMES, SchemeConfig, SolveResult, assemble, solve
from .wavelet_basis import BasisSpec, basis_matrix, project, wavelet_eval

__version__ = "0.1.0"

__all__ = [
    "BasisSpec",
    "Conditions",
    "ErrorTable",
    "NewtonConfig",
    "NewtonReport",
    "SCHEMES",
    "SchemeConfig",
    "SingularProblem",
    "SolveResult",
    "assemble",
    "basis_matrix",
    "build_D",
    "build_F",
    "builtin_problem",
    "coefficient_decay_check",
    "convergence_sweep",
    "derivative_matrix",
    "error_norms",
    "error_table",
    "load_problem",
    "newton_solve",
    "project",
    "solve",
    "theoretical_bound",
    "wavelet_eval",
]
