from __future__ import annotations

import math

import numpy as np
import pytest

from vlwave.quadrature import (
    IntegrationError,
    composite_nodes,
    gauss_chebyshev_rule,
    gauss_legendre_rule,
    integrate,
)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 16, 33, 64, 128])
def test_legendre_matches_numpy(n):
    rule = gauss_legendre_rule(n)
    x, w = np.polynomial.legendre.leggauss(n)
    assert np.allclose(rule.nodes, x, atol=1e-14)
    assert np.allclose(rule.weights, w, atol=1e-14)
    assert rule.family == "legendre"


@pytest.mark.parametrize("n", [2, 5, 10])
def test_legendre_exact_to_degree_2n_minus_1(n):
    rule = gauss_legendre_rule(n)
    for p in range(2 * n):
        expected = (1 - (-1) ** (p + 1)) / (p + 1)
        assert np.dot(rule.weights, rule.nodes**p) == pytest.approx(expected, abs=1e-13)


def test_rule_arrays_are_read_only():
    rule = gauss_legendre_rule(4)
    with pytest.raises(ValueError):
        rule.nodes[0] = 0.0


def test_rule_size_limits():
    with pytest.raises(ValueError):
        gauss_legendre_rule(0)
    with pytest.raises(ValueError):
        gauss_legendre_rule(257)


def test_chebyshev_rule_integrates_weighted_polynomials():
    rule = gauss_chebyshev_rule(6)
    # int_{-1}^{1} x^2 / sqrt(1 - x^2) dx = pi / 2
    assert integrate(lambda x: x**2, -1, 1, rule) == pytest.approx(math.pi / 2, abs=1e-14)
    assert integrate(lambda x: np.ones_like(x), -1, 1, rule) == pytest.approx(math.pi, abs=1e-14)


def test_integrate_maps_interval():
    rule = gauss_legendre_rule(20)
    assert integrate(np.exp, 0.0, 2.0, rule) == pytest.approx(math.e**2 - 1, rel=1e-14)


def test_integrate_reports_bad_node():
    rule = gauss_legendre_rule(4)
    with pytest.raises(IntegrationError):
        integrate(lambda x: 1.0 / (x - x[1]), -1, 1, rule)


def test_composite_nodes_cover_subintervals():
    x, w = composite_nodes([0.0, 0.5, 1.0], gauss_legendre_rule(5))
    assert x.size == 10 and np.all(np.diff(x) > 0)
    assert w.sum() == pytest.approx(1.0, abs=1e-14)
    assert np.dot(w, x**3) == pytest.approx(0.25, abs=1e-14)
