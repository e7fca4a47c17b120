"""Truncated wavelet expansions and their derivatives.

A :class:`SolutionExpansion` is ``Lambda^T Upsilon(x)``, optionally wrapped as
``lift(x) + nu(x) * Lambda^T Upsilon(x)`` so that side conditions hold for every
``Lambda`` (the Galerkin trial space).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operational_matrix import derivative_matrix
from .wavelet_basis import BasisSpec, basis_matrix

__all__ = ["Decoration", "SolutionExpansion", "trial_matrices", "expansion_eval", "Solution"]


@dataclass(frozen=True)
class Decoration:
    """Trial wrapper ``lift + nu * S``.

    ivp: ``v0 + v1 x + x^2 S``; bvp: ``v0 + (v1 - v0) x/L + x (L - x) S``.
    """

    kind: str  # "ivp" | "bvp"
    v0: float
    v1: float
    L: float

    def __post_init__(self):
        if self.kind not in ("ivp", "bvp"):
            raise ValueError(f"unknown decoration kind {self.kind!r}")

    def lift(self, x: np.ndarray, order: int) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        slope = self.v1 if self.kind == "ivp" else (self.v1 - self.v0) / self.L
        if order == 0:
            return self.v0 + slope * x
        if order == 1:
            return np.full_like(x, slope)
        return np.zeros_like(x)

    def nu(self, x: np.ndarray, order: int) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind == "ivp":
            return (x * x, 2.0 * x, np.full_like(x, 2.0))[order]
        L = self.L
        return (x * (L - x), L - 2.0 * x, np.full_like(x, -2.0))[order]


def trial_matrices(x, basis: BasisSpec, decoration: Decoration | None = None):
    """Return ``(lifts, mats)`` with ``Y^(j)(x) = lifts[j] + mats[j] @ Lambda`` for j = 0, 1, 2."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    phi = basis_matrix(x, basis)
    phis = [phi] + [phi @ derivative_matrix(basis, j).T for j in (1, 2)]
    if decoration is None:
        zero = np.zeros_like(x)
        return (zero, zero, zero), tuple(phis)
    n0, n1, n2 = (decoration.nu(x, j)[:, None] for j in range(3))
    mats = (
        n0 * phis[0],
        n1 * phis[0] + n0 * phis[1],
        n2 * phis[0] + 2.0 * n1 * phis[1] + n0 * phis[2],
    )
    lifts = tuple(decoration.lift(x, j) for j in range(3))
    return lifts, mats


@dataclass(frozen=True, eq=False)
class SolutionExpansion:
    basis: BasisSpec
    coeffs: np.ndarray
    decoration: Decoration | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.shape != (self.basis.eta,):
            raise ValueError(f"expected {self.basis.eta} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __call__(self, x, order: int = 0):
        return expansion_eval(self, x, order)


def expansion_eval(expansion: SolutionExpansion, x, order: int = 0):
    """Value (order 0) or derivative (1, 2) of the expansion at ``x``."""
    if order not in (0, 1, 2):
        raise ValueError(f"unsupported derivative order {order}; use 0, 1 or 2")
    scalar = np.ndim(x) == 0
    lifts, mats = trial_matrices(x, expansion.basis, expansion.decoration)
    out = lifts[order] + mats[order] @ expansion.coeffs
    return float(out[0]) if scalar else out


@dataclass(frozen=True, eq=False)
class Solution:
    """A computed solution: the expansion of the working variable plus the back-transform.

    ``transform == "log"`` means the expansion represents ``V`` with ``Y = exp(V)``.
    """

    expansion: SolutionExpansion
    transform: str = "none"

    @property
    def basis(self) -> BasisSpec:
        return self.expansion.basis

    def __call__(self, x, order: int = 0):
        if self.transform == "none":
            return expansion_eval(self.expansion, x, order)
        v = np.exp(expansion_eval(self.expansion, x, 0))
        if order == 0:
            return v
        dv = expansion_eval(self.expansion, x, 1)
        if order == 1:
            return dv * v
        return (expansion_eval(self.expansion, x, 2) + dv * dv) * v
