"""Vieta-Lucas polynomials on [-2, 2] and their shifted form on [0, 2].

``VL_m(2 cos d) = 2 cos(m d)``; the shifted family is ``VL*_m(t) = VL_m(2t - 2)``.
All evaluators accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

__all__ = [
    "ExtrapolationWarning",
    "alpha",
    "vl_eval",
    "vl_shifted_eval",
    "vl_monomial_coeffs",
    "vl_nodes",
    "monomial_in_vl_basis",
    "vl_rodrigues_eval",
    "generating_fn_partial",
    "generating_fn_closed",
    "vl_derivative_coeffs",
    "vl_ode_residual",
    "shifted_derivative_expansion",
]

MAX_MONOMIAL_DEGREE = 30
_EDGE_TOL = 1e-12


class ExtrapolationWarning(UserWarning):
    """Raised (as a warning) when a polynomial is evaluated outside [-2, 2]."""


def alpha(m: int) -> int:
    """Norm factor: ``<VL_m, VL_m>_w = 2*pi*alpha(m)``."""
    if m < 0:
        raise ValueError(f"degree must be non-negative, got {m}")
    return 2 if m == 0 else 1


def _check_degree(m: int) -> None:
    if int(m) != m or m < 0:
        raise ValueError(f"degree must be a non-negative integer, got {m!r}")


def vl_eval(m: int, t):
    """Evaluate ``VL_m(t)`` with the three-term recurrence."""
    _check_degree(m)
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 2.0 + _EDGE_TOL):
        warnings.warn(f"VL_{m} evaluated outside [-2, 2]", ExtrapolationWarning, stacklevel=2)
    prev = np.full_like(t, 2.0)
    if m == 0:
        return prev if prev.ndim else float(prev)
    cur = t.copy()
    for _ in range(2, m + 1):
        prev, cur = cur, t * cur - prev
    return cur if cur.ndim else float(cur)


def vl_shifted_eval(m: int, t):
    """Evaluate the shifted polynomial ``VL*_m(t) = VL_m(2t - 2)`` on [0, 2]."""
    return vl_eval(m, 2.0 * np.asarray(t, dtype=float) - 2.0)


def vl_monomial_coeffs(m: int) -> np.ndarray:
    """Power-basis coefficients ``c[i]`` of ``t**i`` in ``VL_m``.

    Uses the closed sum ``(-1)^i m (m-i-1)! / (i! (m-2i)!)`` at power ``m - 2i``
    in exact integer arithmetic.
    """
    _check_degree(m)
    if m > MAX_MONOMIAL_DEGREE:
        raise ValueError(f"monomial form supported for m <= {MAX_MONOMIAL_DEGREE}")
    if m == 0:
        return np.array([2.0])
    coeffs = np.zeros(m + 1)
    for i in range(m // 2 + 1):
        num = m * math.factorial(m - i - 1)
        den = math.factorial(i) * math.factorial(m - 2 * i)
        coeffs[m - 2 * i] = (-1) ** i * (num // den)
    return coeffs


def vl_nodes(m: int, kind: str = "zeros") -> np.ndarray:
    """Zeros ``2cos((j - 1/2) pi/m)`` or extrema ``2cos(j pi/m)``, j = 1..m, decreasing."""
    _check_degree(m)
    if m == 0:
        raise ValueError("no nodes: VL_0 is constant")
    j = np.arange(1, m + 1, dtype=float)
    if kind == "zeros":
        return 2.0 * np.cos((j - 0.5) * np.pi / m)
    if kind == "extrema":
        return 2.0 * np.cos(j * np.pi / m)
    raise ValueError(f"unknown node kind {kind!r}; expected 'zeros' or 'extrema'")


def monomial_in_vl_basis(m: int) -> list[tuple[int, float]]:
    """Expand ``t**m`` as ``sum C(m, j) VL_{m-2j}``, halving the ``VL_0`` term for even m."""
    _check_degree(m)
    terms = []
    for j in range(m // 2 + 1):
        c = float(math.comb(m, j))
        if 2 * j == m:
            c /= 2.0
        terms.append((m - 2 * j, c))
    return terms


def _gen_binom(a: float, j: int) -> float:
    # all three gamma arguments are positive for a = m - 1/2, 0 <= j <= m
    return math.exp(math.lgamma(a + 1.0) - math.lgamma(j + 1.0) - math.lgamma(a - j + 1.0))


def vl_rodrigues_eval(m: int, t: float) -> float:
    """Evaluate ``VL_m(t)`` through the expanded Rodrigues representation.

    ``C_m * (-1)^m m! sum_j C(m-1/2, j) C(m-1/2, m-j) (t-2)^(m-j) (t+2)^j`` with
    ``C_m = (-1)^m 2 m! / (2m)!``. Defined on the open interval (-2, 2).
    """
    _check_degree(m)
    t = float(t)
    if abs(t) >= 2.0:
        raise ValueError(f"Rodrigues form requires |t| < 2, got {t}")
    a = m - 0.5
    total = sum(
        _gen_binom(a, j) * _gen_binom(a, m - j) * (t - 2.0) ** (m - j) * (t + 2.0) ** j
        for j in range(m + 1)
    )
    # (-1)^m from C_m and from g cancel
    scale = 2.0 * math.factorial(m) ** 2 / math.factorial(2 * m)
    return scale * total


def generating_fn_closed(t_arg: float, x: float) -> float:
    """Closed form ``(2 - x t) / (1 - x t + t^2)`` of the generating function."""
    den = 1.0 - x * t_arg + t_arg * t_arg
    if abs(den) < 1e-14:
        raise ZeroDivisionError(f"generating function singular at t={t_arg}, x={x}")
    return (2.0 - x * t_arg) / den


def generating_fn_partial(t_arg: float, x: float, order: int) -> float:
    """Partial sum ``sum_{m=0}^{order} VL_m(x) t^m``."""
    if abs(1.0 - x * t_arg + t_arg * t_arg) < 1e-14:
        raise ZeroDivisionError(f"generating function singular at t={t_arg}, x={x}")
    total, prev, cur = 2.0, 2.0, float(x)
    power = 1.0
    for _ in range(1, order + 1):
        power *= t_arg
        total += cur * power
        prev, cur = cur, x * cur - prev
    return total


def vl_derivative_coeffs(m: int, order: int = 1) -> np.ndarray:
    """Power-basis coefficients of ``d^order/dt^order VL_m``."""
    c = np.polynomial.polynomial.polyder(vl_monomial_coeffs(m), order)
    return np.atleast_1d(c)


def vl_ode_residual(m: int, t):
    """``(4 - t^2) VL_m'' - t VL_m' + m^2 VL_m``; vanishes identically for m >= 1."""
    if m < 1:
        raise ValueError("the Vieta-Lucas ODE is stated for m >= 1")
    pv = np.polynomial.polynomial.polyval
    t = np.asarray(t, dtype=float)
    c = vl_monomial_coeffs(m)
    y = pv(t, c)
    dy = pv(t, vl_derivative_coeffs(m, 1))
    d2y = pv(t, vl_derivative_coeffs(m, 2))
    return (4.0 - t * t) * d2y - t * dy + m * m * y


def shifted_derivative_expansion(m: int, M_cap: int) -> list[tuple[int, float]]:
    """Pairs ``(j, 2m/alpha_j)`` with ``d/dt VL*_m = sum coef * VL*_j`` (j < m, j + m odd)."""
    _check_degree(m)
    if M_cap < m:
        raise ValueError(f"M_cap={M_cap} must be at least m={m}")
    return [(j, 2.0 * m / alpha(j)) for j in range(m) if (j + m) % 2 == 1]
