"""Damped Newton iteration with a central-difference Jacobian."""

from __future__ import annotations

import warnings

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

__all__ = [
    "NewtonConfig",
    "NewtonReport",
    "SingularSystemError",
    "JacobianError",
    "fd_jacobian",
    "newton_solve",
]

PIVOT_TOL = 1e-14
MIN_STEP = 2.0**-10


class SingularSystemError(np.linalg.LinAlgError):
    pass


class JacobianError(ArithmeticError):
    pass


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-12
    max_iter: int = 50
    damping: bool = True

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 0:
            raise ValueError(f"max_iter must be non-negative, got {self.max_iter}")


@dataclass
class NewtonReport:
    iterations: int
    final_residual_norm: float
    converged: bool
    history: list[float] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "final_residual_norm": self.final_residual_norm,
            "converged": self.converged,
            "history": list(self.history),
        }


def _residual(system, lam):
    if callable(getattr(system, "residual_map", None)):
        return np.asarray(system.residual_map(lam), dtype=float)
    return np.asarray(system(lam), dtype=float)


def fd_jacobian(system, lam) -> np.ndarray:
    """Central differences, step ``max(1e-7, 1e-7 |lam_j|)`` per column.

    If the system exposes ``operator_map`` (its residual minus a constant right-hand
    side) that map is differenced instead, so the constant cannot pollute columns
    through cancellation.
    """
    fun = getattr(system, "operator_map", None)
    if not callable(fun):
        fun = lambda v: _residual(system, v)  # noqa: E731
    lam = np.asarray(lam, dtype=float)
    base = np.asarray(fun(lam), dtype=float)
    if not np.all(np.isfinite(base)):
        raise JacobianError("residual is not finite at the linearisation point")
    J = np.empty((base.size, lam.size))
    for j in range(lam.size):
        h = max(1e-7, 1e-7 * abs(lam[j]))
        up, down = lam.copy(), lam.copy()
        up[j] += h
        down[j] -= h
        with np.errstate(all="ignore"):
            col = (np.asarray(fun(up), dtype=float) - np.asarray(fun(down), dtype=float)) / (2.0 * h)
        if not np.all(np.isfinite(col)):
            raise JacobianError(f"non-finite residual when perturbing column {j}")
        J[:, j] = col
    return J


def _lu_solve(J: np.ndarray, r: np.ndarray) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(J, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.min() < PIVOT_TOL * max(1.0, np.abs(J).max()):
        raise SingularSystemError(f"Jacobian is singular (smallest pivot {pivots.min():.3e})")
    return scipy.linalg.lu_solve((lu, piv), r)


def _norm(r) -> float:
    with np.errstate(all="ignore"):
        return float(np.max(np.abs(r))) if np.all(np.isfinite(r)) else float("inf")


def newton_solve(system, init, config: NewtonConfig | None = None):
    """Solve ``system.residual_map(lam) = 0`` from ``init``.

    Returns ``(lam, report)``. Non-convergence is reported, not raised; a singular
    Jacobian raises :class:`SingularSystemError`.
    """
    config = config or NewtonConfig()
    lam = np.array(init, dtype=float)
    if not np.all(np.isfinite(lam)):
        raise ValueError("initial coefficients must be finite")
    r = _residual(system, lam)
    rnorm = _norm(r)
    if not np.isfinite(rnorm):
        raise ValueError("residual is not finite at the initial coefficients")
    history = [rnorm]
    iterations = 0
    while rnorm > config.tol and iterations < config.max_iter:
        step = _lu_solve(fd_jacobian(system, lam), r)
        if config.damping:
            t, accepted = 1.0, False
            while t >= MIN_STEP:
                trial = lam - t * step
                with np.errstate(all="ignore"):
                    r_trial = _residual(system, trial)
                if _norm(r_trial) < rnorm:
                    accepted = True
                    break
                t *= 0.5
            if not accepted:
                break
        else:
            trial = lam - step
            r_trial = _residual(system, trial)
            if not np.isfinite(_norm(r_trial)):
                break
        lam, r = trial, r_trial
        rnorm = _norm(r)
        history.append(rnorm)
        iterations += 1
    report = NewtonReport(iterations, rnorm, rnorm <= config.tol, history)
    return lam, report
