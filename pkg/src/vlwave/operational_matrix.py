"""Operational matrix of the first derivative for the wavelet vector.

``d/dx Upsilon(x) = D Upsilon(x)`` on the problem domain [0, L]; the chain-rule factor
``2/L`` of the map ``zeta = 2x/L`` is folded into D so callers never rescale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .vlp_core import alpha
from .wavelet_basis import BasisSpec

__all__ = ["OperationalMatrix", "build_F", "build_D", "matrix_power", "derivative_matrix"]


@dataclass(frozen=True, eq=False)
class OperationalMatrix:
    entries: np.ndarray
    order: int
    spec: BasisSpec

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def build_F(spec: BasisSpec) -> np.ndarray:
    """M x M block: ``F[u,v] = 2^k (u-1) / sqrt(alpha_{u-1} alpha_{v-1})`` for v < u, u + v odd."""
    M = spec.M
    F = np.zeros((M, M))
    for u in range(2, M + 1):
        for v in range(1, u):
            if (u + v) % 2 == 1:
                F[u - 1, v - 1] = 2.0**spec.k * (u - 1) / math.sqrt(alpha(u - 1) * alpha(v - 1))
    return F * (2.0 / spec.L)


@lru_cache(maxsize=64)
def _block_diag(spec: BasisSpec) -> np.ndarray:
    D = np.kron(np.eye(spec.n_sub), build_F(spec))
    D.setflags(write=False)
    return D


def build_D(spec: BasisSpec) -> OperationalMatrix:
    """eta x eta block-diagonal matrix with ``2^(k-1)`` copies of ``build_F(spec)``."""
    return OperationalMatrix(_block_diag(spec), 1, spec)


@lru_cache(maxsize=64)
def _power(spec: BasisSpec, m: int) -> np.ndarray:
    P = np.linalg.matrix_power(_block_diag(spec), m)
    P.setflags(write=False)
    return P


def matrix_power(D: OperationalMatrix, m: int) -> OperationalMatrix:
    """``D^m``: the m-th derivative operator. Zero for ``m >= M`` (blocks are nilpotent)."""
    if m < 1:
        raise ValueError(f"derivative order must be >= 1, got {m}")
    if D.order != 1:
        return OperationalMatrix(np.linalg.matrix_power(D.entries, m), D.order * m, D.spec)
    return OperationalMatrix(_power(D.spec, m), m, D.spec)


def derivative_matrix(spec: BasisSpec, order: int) -> np.ndarray:
    """Plain array ``D^order`` (identity for order 0)."""
    if order == 0:
        return np.eye(spec.eta)
    return _power(spec, order)
