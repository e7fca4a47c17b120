from __future__ import annotations

import numpy as np
import pytest
import sympy as sp

from conftest import X, manufactured_problem
from vlwave.expansion import expansion_eval
from vlwave.nonlinear_solver import SingularSystemError
from vlwave.problem_model import builtin_problem
from vlwave.residual_schemes import (
    SCHEMES,
    SchemeConfig,
    SingularPointError,
    assemble,
    collocation_nodes,
    galerkin_trial,
    residual_at,
    solve,
)
from vlwave.vlp_core import vl_nodes
from vlwave.wavelet_basis import BasisSpec


@pytest.mark.parametrize("scheme", SCHEMES)
@pytest.mark.parametrize("pid", [1, 2, 3])
def test_square_systems(scheme, pid):
    p = builtin_problem(pid)
    basis = BasisSpec(1, 6, p.L)
    system = assemble(p, basis, SchemeConfig(scheme))
    assert system.residual_map(np.zeros(6)).shape == (6,)
    assert system.n_condition_rows == (0 if scheme == "galerkin" else 2)


def test_collocation_nodes_k1():
    basis = BasisSpec(1, 6, 1.0)
    nodes = collocation_nodes(basis)
    t = 2 * np.cos(np.arange(1, 5) * np.pi / 5)
    assert np.allclose(nodes, (t + 2) / 4)
    assert np.all((nodes > 0) & (nodes < 1))
    with pytest.raises(ValueError):
        collocation_nodes(BasisSpec(1, 2, 1.0))


def test_collocation_nodes_avoid_breakpoints():
    basis = BasisSpec(3, 4, 2.0)
    raw = 2.0 * (vl_nodes(15, "extrema")[:-1] + 2) / 4
    assert np.any(np.isclose(raw, 1.5, atol=1e-13))
    nodes = collocation_nodes(basis)
    assert nodes.size == basis.eta - 2
    assert not np.any(np.isin(nodes, basis.breakpoints))


@pytest.mark.parametrize("pid", [1, 2])
def test_galerkin_trial_meets_conditions(pid, rng):
    p = builtin_problem(pid)
    basis = BasisSpec(1, 5, p.L)
    system = assemble(p, basis, SchemeConfig("galerkin"))
    for _ in range(5):
        exp = system.expansion(rng.normal(size=5))
        c = p.conditions
        assert expansion_eval(exp, 0.0) == pytest.approx(c.v0, abs=1e-13)
        if c.kind == "ivp":
            assert expansion_eval(exp, 0.0, 1) == pytest.approx(c.v1, abs=1e-13)
        else:
            assert expansion_eval(exp, p.L) == pytest.approx(c.v1, abs=1e-13)
    assert galerkin_trial(p).kind == p.conditions.kind


def test_residual_undefined_at_singular_point():
    p = builtin_problem(1)
    with pytest.raises(SingularPointError):
        residual_at(np.zeros(6), np.array([0.0, 0.5]), p, BasisSpec(1, 6, p.L))


@pytest.mark.parametrize("scheme", SCHEMES)
@pytest.mark.parametrize("pid", [1, 3])
def test_linear_problems_take_one_newton_step(scheme, pid):
    p = builtin_problem(pid)
    result = solve(p, BasisSpec(1, 6, p.L), SchemeConfig(scheme), init=np.zeros(6))
    assert result.converged and result.report.iterations == 1


def test_example2_zero_start_finds_trivial_root():
    p = builtin_problem(2)
    result = solve(p, BasisSpec(1, 6, p.L), SchemeConfig("collocation"), init=np.zeros(6))
    assert result.converged and result.report.iterations == 0
    assert np.allclose(result.coeffs, 0.0)


@pytest.mark.parametrize("scheme", SCHEMES)
def test_example2_default_start_converges(scheme):
    p = builtin_problem(2)
    result = solve(p, BasisSpec(1, 6, p.L), SchemeConfig(scheme))
    assert result.converged and result.report.iterations <= 15
    assert result.report.final_residual_norm <= 1e-12


@pytest.mark.parametrize("scheme", SCHEMES)
def test_log_substitution_recovers_exponent(scheme):
    p = builtin_problem(5)
    result = solve(p, BasisSpec(1, 3, p.L), SchemeConfig(scheme))
    x = np.linspace(0, 1, 21)
    assert np.allclose(result.system.expansion(result.coeffs)(x), x**2, atol=1e-10)
    assert np.allclose(result.solution(x), np.exp(x**2), atol=1e-9)


@pytest.mark.parametrize("treatment", ["raw", "zeta", "multiply_by_zeta"])
@pytest.mark.parametrize("scheme", ["tau", "galerkin"])
def test_both_treatments_recover_example3(scheme, treatment):
    p = builtin_problem(3)
    result = solve(p, BasisSpec(1, 5, p.L), SchemeConfig(scheme, singularity_treatment=treatment))
    x = np.linspace(0, 2, 21)
    assert np.allclose(result.solution(x), x**4 - x**3, atol=1e-9)


def test_treatment_resolution():
    p1, p2 = builtin_problem(1), builtin_problem(2)
    assert SchemeConfig("tau").treatment_for(p1) == "zeta"
    assert SchemeConfig("tau").treatment_for(p2) == "raw"
    assert SchemeConfig("collocation", singularity_treatment="zeta").treatment_for(p1) == "raw"
    assert SchemeConfig("galerkin", singularity_treatment="multiply_by_zeta").singularity_treatment == "zeta"
    with pytest.raises(ValueError):
        SchemeConfig("spectral")
    with pytest.raises(ValueError):
        SchemeConfig("tau", singularity_treatment="cut")


@pytest.mark.parametrize("scheme", ["collocation", "tau"])
def test_multi_subinterval_systems_are_uncoupled(scheme):
    # Nothing ties the subintervals together, so the second block's constant mode is free.
    p = builtin_problem(1)
    with pytest.raises(SingularSystemError):
        solve(p, BasisSpec(2, 6, p.L), SchemeConfig(scheme))


def test_multi_subinterval_galerkin_jumps_at_breakpoint():
    p = builtin_problem(1)
    sol = solve(p, BasisSpec(2, 3, p.L), SchemeConfig("galerkin")).solution
    left, right = sol(np.array([0.5 - 1e-12, 0.5]))
    assert abs(left - right) > 1e-4


def test_tau_singular_bvp_is_degenerate():
    # With mu = 2, x (Y'' + 2Y'/x) = (xY)'', so Y(0) adds nothing beyond (xY)(0) = 0.
    p = manufactured_problem(X**2 - X + sp.Rational(3, 2), 2.0, "0", "bvp", 2.0)
    with pytest.raises(SingularSystemError):
        solve(p, BasisSpec(1, 6, 2.0), SchemeConfig("tau"))
