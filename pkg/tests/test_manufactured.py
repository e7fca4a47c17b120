from __future__ import annotations

import numpy as np
import sympy as sp
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import X, manufactured_problem
from vlwave.residual_schemes import SCHEMES, SchemeConfig, residual_at, solve
from vlwave.wavelet_basis import BasisSpec, project


@st.composite
def polynomial_problems(draw):
    M = draw(st.integers(3, 8))
    degree = draw(st.integers(0, M - 1))
    coeffs = draw(st.lists(st.integers(-6, 6), min_size=degree + 1, max_size=degree + 1))
    kind = draw(st.sampled_from(["ivp", "bvp"]))
    mu = draw(st.sampled_from([0.0, 1.0, 2.0, 5.0])) if kind == "ivp" else 0.0
    L = draw(st.sampled_from([0.5, 1.0, 2.0]))
    f = draw(st.sampled_from(["0", "Y", "x*Y", "3*Y - x*Y"]))
    poly = sum(sp.Rational(c, 2) * X**i for i, c in enumerate(coeffs))
    return M, manufactured_problem(poly, mu, f, kind, L)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(polynomial_problems())
def test_polynomial_solutions_in_span_are_recovered(case):
    M, problem = case
    basis = BasisSpec(1, M, problem.L)
    x = np.linspace(0.0, problem.L, 41)
    for scheme in SCHEMES:
        result = solve(problem, basis, SchemeConfig(scheme))
        assert result.converged
        assert np.max(np.abs(result.solution(x) - problem.exact(x))) <= 1e-9


@settings(max_examples=30, deadline=None)
@given(polynomial_problems())
def test_projected_exact_solution_has_zero_residual(case):
    M, problem = case
    basis = BasisSpec(1, M, problem.L)
    lam = project(problem.exact, basis)
    x = np.linspace(0.05, 1.0, 17) * problem.L
    scale = 1.0 + np.max(np.abs(problem.g(x)))
    assert np.max(np.abs(residual_at(lam, x, problem, basis))) <= 1e-8 * scale
