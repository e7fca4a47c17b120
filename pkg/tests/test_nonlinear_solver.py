from __future__ import annotations

import numpy as np
import pytest

from vlwave.nonlinear_solver import NewtonConfig, SingularSystemError, fd_jacobian, newton_solve


def circle_line(v):
    x, y = v
    return np.array([x * x + y * y - 4.0, x - y])


def test_quadratic_convergence_to_root():
    lam, report = newton_solve(circle_line, [1.0, 0.5])
    assert report.converged
    assert np.allclose(lam, [np.sqrt(2), np.sqrt(2)], atol=1e-12)
    assert report.final_residual_norm <= 1e-12
    assert report.history[0] > report.history[-1]
    assert len(report.history) == report.iterations + 1


class AffineSystem:
    def __init__(self, A, b):
        self.A, self.rhs = A, b

    def operator_map(self, v):
        return self.A @ v

    def residual_map(self, v):
        return self.A @ v - self.rhs


def test_affine_system_takes_one_step():
    A = np.array([[3.0, 1.0], [1.0, 2.0]])
    b = np.array([1.0, -1.0])
    lam, report = newton_solve(AffineSystem(A, b), np.zeros(2))
    assert report.iterations == 1 and report.converged
    assert np.allclose(A @ lam, b)


def test_plain_affine_callable_converges():
    # Differencing through the constant costs ~1e-9 in J, hence possibly a second step.
    A = np.array([[3.0, 1.0], [1.0, 2.0]])
    b = np.array([1.0, -1.0])
    _, report = newton_solve(lambda v: A @ v - b, np.zeros(2))
    assert report.converged and report.iterations <= 2


def test_fd_jacobian_matches_analytic():
    v = np.array([0.7, -1.3])
    J = fd_jacobian(circle_line, v)
    assert np.allclose(J, [[2 * v[0], 2 * v[1]], [1.0, -1.0]], atol=1e-7)


def test_singular_jacobian_raises():
    with pytest.raises(SingularSystemError):
        newton_solve(lambda v: np.array([v[0] + v[1] - 1.0, 2 * v[0] + 2 * v[1] - 2.5]), np.zeros(2))


def test_non_convergence_is_reported():
    lam, report = newton_solve(lambda v: np.array([np.exp(v[0]) - 5.0]), [0.0], NewtonConfig(max_iter=1))
    assert not report.converged and report.iterations == 1


def test_no_descent_stops_without_raising():
    # x^2 + 1 has no real root; damping cannot reduce |r| below 1 forever.
    lam, report = newton_solve(lambda v: np.array([v[0] ** 2 + 1.0]), [0.0001])
    assert not report.converged
    assert np.isfinite(report.final_residual_norm)


def test_undamped_mode():
    lam, report = newton_solve(circle_line, [1.0, 0.5], NewtonConfig(damping=False))
    assert report.converged


def test_config_validation():
    with pytest.raises(ValueError):
        NewtonConfig(tol=0.0)
    with pytest.raises(ValueError):
        NewtonConfig(max_iter=-1)
    with pytest.raises(ValueError):
        newton_solve(circle_line, [np.nan, 0.0])


def test_report_dict():
    _, report = newton_solve(circle_line, [1.0, 0.5])
    d = report.as_dict()
    assert set(d) == {"iterations", "final_residual_norm", "converged", "history"}
