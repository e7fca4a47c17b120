"""Vieta-Lucas wavelets on the canonical interval [0, 2] and the problem domain [0, L].

A problem coordinate ``x`` in [0, L] maps to ``zeta = 2x/L``. Subinterval ``s``
(1-based) of ``2**(k-1)`` covers ``[(s_hat - 2)/2**k, (s_hat + 2)/2**k)`` in zeta
with ``s_hat = 2(2s - 1)``; the last subinterval is closed at zeta = 2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quadrature import gauss_chebyshev_rule
from .vlp_core import alpha, vl_eval

__all__ = [
    "AliasingWarning",
    "BasisSpec",
    "flat_index",
    "unflat_index",
    "wavelet_eval",
    "basis_vector",
    "basis_matrix",
    "weight_eval",
    "project",
]

_DOMAIN_TOL = 1e-12


class AliasingWarning(UserWarning):
    pass


@dataclass(frozen=True)
class BasisSpec:
    """Resolution ``k``, polynomial order cap ``M`` and domain length ``L``."""

    k: int
    M: int
    L: float = 2.0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        if int(self.M) != self.M or self.M < 1:
            raise ValueError(f"M must be a positive integer, got {self.M!r}")
        if not (self.L > 0 and math.isfinite(self.L)):
            raise ValueError(f"L must be positive and finite, got {self.L!r}")
        object.__setattr__(self, "L", float(self.L))

    @property
    def n_sub(self) -> int:
        return 2 ** (self.k - 1)

    @property
    def eta(self) -> int:
        return self.n_sub * self.M

    @property
    def breakpoints(self) -> np.ndarray:
        """Subinterval edges in the problem coordinate, length ``n_sub + 1``."""
        return np.linspace(0.0, self.L, self.n_sub + 1)

    def to_canonical(self, x):
        return 2.0 * np.asarray(x, dtype=float) / self.L


def flat_index(s: int, m: int, spec: BasisSpec) -> int:
    """1-based flat position ``u = (s - 1) M + (m + 1)``."""
    if not 1 <= s <= spec.n_sub:
        raise IndexError(f"s={s} outside 1..{spec.n_sub}")
    if not 0 <= m < spec.M:
        raise IndexError(f"m={m} outside 0..{spec.M - 1}")
    return (s - 1) * spec.M + m + 1


def unflat_index(u: int, spec: BasisSpec) -> tuple[int, int]:
    if not 1 <= u <= spec.eta:
        raise IndexError(f"u={u} outside 1..{spec.eta}")
    s, m = divmod(u - 1, spec.M)
    return s + 1, m


def _canonical_checked(x, spec: BasisSpec) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    tol = _DOMAIN_TOL * spec.L
    if np.any((x < -tol) | (x > spec.L + tol)) or np.any(np.isnan(x)):
        bad = x[(x < -tol) | (x > spec.L + tol) | np.isnan(x)]
        raise ValueError(f"x={bad.ravel()[0]!r} outside the domain [0, {spec.L}]")
    return np.clip(spec.to_canonical(x), 0.0, 2.0)


def _subinterval(zeta: np.ndarray, spec: BasisSpec) -> np.ndarray:
    s = np.floor(zeta * spec.n_sub / 2.0).astype(int) + 1
    return np.minimum(s, spec.n_sub)


def _local_arg(zeta, s, k):
    return 2.0**k * zeta - 2.0 * (2.0 * s - 1.0)


def _norm(m: int, k: int) -> float:
    return 2.0 ** (k / 2.0) / math.sqrt(2.0 * math.pi * alpha(m))


def wavelet_eval(s: int, m: int, x, spec: BasisSpec):
    """Value of ``Upsilon_{s,m}`` at problem coordinate(s) ``x``; zero off its support."""
    flat_index(s, m, spec)
    zeta = _canonical_checked(x, spec)
    active = _subinterval(zeta, spec) == s
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        vals = _norm(m, spec.k) * vl_eval(m, _local_arg(zeta, s, spec.k))
    out = np.where(active, vals, 0.0)
    return out if out.ndim else float(out)


def basis_matrix(x, spec: BasisSpec) -> np.ndarray:
    """Rows ``Upsilon(x_i)`` for an array of points: shape ``(len(x), eta)``."""
    zeta = np.atleast_1d(_canonical_checked(x, spec))
    s = _subinterval(zeta, spec)
    t = np.clip(_local_arg(zeta, s, spec.k), -2.0, 2.0)
    local = np.empty((zeta.size, spec.M))
    prev, cur = np.full_like(t, 2.0), t
    local[:, 0] = prev
    if spec.M > 1:
        local[:, 1] = cur
    for m in range(2, spec.M):
        prev, cur = cur, t * cur - prev
        local[:, m] = cur
    local *= np.array([_norm(m, spec.k) for m in range(spec.M)])
    out = np.zeros((zeta.size, spec.eta))
    cols = (s[:, None] - 1) * spec.M + np.arange(spec.M)[None, :]
    np.put_along_axis(out, cols, local, axis=1)
    return out


def basis_vector(x: float, spec: BasisSpec) -> np.ndarray:
    """``Upsilon(x)`` in flat order; at most M entries are nonzero."""
    return basis_matrix([x], spec)[0]


def weight_eval(s: int, x, spec: BasisSpec):
    """Orthogonality weight ``w_s = 1/sqrt(4 - (2^k zeta - s_hat)^2)``, open support only."""
    if not 1 <= s <= spec.n_sub:
        raise IndexError(f"s={s} outside 1..{spec.n_sub}")
    t = _local_arg(spec.to_canonical(x), s, spec.k)
    if np.any(np.abs(t) >= 2.0):
        raise ValueError("weight is infinite at (or undefined beyond) the support edge")
    out = 1.0 / np.sqrt(4.0 - t * t)
    return out if np.ndim(out) else float(out)


def project(f: Callable[[np.ndarray], np.ndarray], spec: BasisSpec, quad_order: int | None = None) -> np.ndarray:
    """Weighted projection coefficients ``Lambda`` (flat order) of ``f`` on [0, L].

    With ``2^k zeta - s_hat = 2 cos(d)`` the weighted inner product becomes
    ``2^(-k/2) * 2/sqrt(2 pi alpha_m) * int_0^pi f cos(m d) dd``, which Gauss-Chebyshev
    evaluates exactly for polynomial ``f`` of modest degree.
    """
    if quad_order is None:
        quad_order = max(64, 4 * spec.M)
    if quad_order < spec.M:
        warnings.warn(f"quad_order={quad_order} < M={spec.M}: coefficients will alias", AliasingWarning, stacklevel=2)
    n = quad_order
    delta = (2.0 * np.arange(1, n + 1) - 1.0) * np.pi / (2.0 * n)
    cos_t = gauss_chebyshev_rule(n).nodes  # == cos(delta)
    m = np.arange(spec.M)
    cos_md = np.cos(np.outer(m, delta))
    scale = np.array([2.0 ** (-spec.k / 2.0) * 2.0 / math.sqrt(2.0 * math.pi * alpha(j)) for j in m])
    out = np.empty(spec.eta)
    for s in range(1, spec.n_sub + 1):
        zeta = (2.0 * cos_t + 2.0 * (2.0 * s - 1.0)) / 2.0**spec.k
        vals = np.broadcast_to(np.asarray(f(zeta * spec.L / 2.0), dtype=float), zeta.shape)
        out[(s - 1) * spec.M : s * spec.M] = scale * (np.pi / n) * (cos_md @ vals)
    return out
