"""Gauss-Legendre and Gauss-Chebyshev (first kind) rules.

Both rules are open: no node sits on an interval endpoint, which matters because
the wavelet weights blow up at subinterval edges and ``mu/x`` blows up at 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

__all__ = [
    "IntegrationError",
    "QuadratureRule",
    "gauss_legendre_rule",
    "gauss_chebyshev_rule",
    "integrate",
    "composite_nodes",
]

MAX_LEGENDRE_NODES = 256


class IntegrationError(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    family: str  # "legendre" | "chebyshev1"

    def __len__(self) -> int:
        return len(self.nodes)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _legendre_and_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p0, p1 = np.ones_like(x), x.copy()
    if n == 0:
        return p0, np.zeros_like(x)
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    return p1, n * (x * p1 - p0) / (x * x - 1.0)


@lru_cache(maxsize=None)
def gauss_legendre_rule(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on (-1, 1), exact to degree 2n - 1.

    Nodes come from Newton iteration on P_n started at ``cos(pi (i - 1/4) / (n + 1/2))``.
    """
    if not 1 <= n <= MAX_LEGENDRE_NODES:
        raise ValueError(f"Gauss-Legendre order must be in 1..{MAX_LEGENDRE_NODES}, got {n}")
    i = np.arange(1, n + 1, dtype=float)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    _, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    # enforce exact symmetry about 0
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return QuadratureRule(_frozen(x), _frozen(w), "legendre")


@lru_cache(maxsize=None)
def gauss_chebyshev_rule(n: int) -> QuadratureRule:
    """n-point Gauss-Chebyshev rule for ``int g(y) / sqrt(1 - y^2) dy``: nodes cos((2i-1)pi/2n), weights pi/n."""
    if n < 1:
        raise ValueError(f"Gauss-Chebyshev order must be positive, got {n}")
    i = np.arange(1, n + 1, dtype=float)
    x = np.cos((2.0 * i - 1.0) * np.pi / (2.0 * n))
    w = np.full(n, np.pi / n)
    return QuadratureRule(_frozen(x), _frozen(w), "chebyshev1")


def composite_nodes(edges, rule: QuadratureRule) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of ``rule`` replicated over consecutive intervals ``edges``."""
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    x = (half * rule.nodes[None, :] + 0.5 * (a + b)).ravel()
    w = (half * rule.weights[None, :]).ravel()
    return x, w


def integrate(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, rule: QuadratureRule) -> float:
    """Apply ``rule`` on [a, b].

    For a Chebyshev rule the result is ``int_a^b f(x) / sqrt(1 - y(x)^2) dx`` with ``y``
    the affine map of [a, b] onto [-1, 1]; ``f`` is the unweighted factor.
    """
    if not a < b:
        raise ValueError(f"integration requires a < b, got [{a}, {b}]")
    half = 0.5 * (b - a)
    x = half * rule.nodes + 0.5 * (a + b)
    with np.errstate(all="ignore"):
        vals = np.asarray(f(x), dtype=float)
    vals = np.broadcast_to(vals, x.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        raise IntegrationError(f"integrand not finite at node x={x[bad][0]!r}")
    return float(half * np.dot(rule.weights, vals))
