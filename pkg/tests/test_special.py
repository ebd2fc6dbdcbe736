import math

import numpy as np
import pytest
from scipy.optimize import brentq

from elastinv.special import (bessel_j, bessel_y, h0, h1, hankel1, hankel1_derivative, series_j,
                              series_y)


def test_values_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0


def test_first_root_of_j0():
    root = brentq(lambda x: float(bessel_j(0, x)), 2.0, 3.0, xtol=1e-15)
    assert root == pytest.approx(2.404825557695773, abs=1e-13)
    assert abs(series_j(0, root)) <= 1e-13
    assert abs(bessel_j(0, 2.404825557695773)) <= 1e-13


def test_first_root_of_y0():
    root = brentq(lambda x: float(bessel_y(0, x)), 0.5, 1.5, xtol=1e-15)
    assert root == pytest.approx(0.8935769662791675, abs=1e-13)
    assert abs(series_y(0, root)) <= 1e-12
    assert abs(bessel_y(0, 0.8935769662791675)) <= 1e-12


def test_y1_small_argument():
    z = 1e-6
    assert bessel_y(1, z) * z == pytest.approx(-2 / math.pi, rel=1e-6)


@pytest.mark.parametrize("x", [0.5, 1.0, 5.0, 20.0])
def test_wronskian(x):
    w = bessel_j(1, x) * bessel_y(0, x) - bessel_j(0, x) * bessel_y(1, x)
    assert w == pytest.approx(2 / (math.pi * x), abs=1e-12)


def test_hankel_real_part():
    assert hankel1(0, 1.0).real == bessel_j(0, 1.0)


def test_hankel_large_argument():
    assert abs(hankel1(0, 100.0)) == pytest.approx(math.sqrt(2 / (math.pi * 100)), rel=5e-3)


def test_h1_is_minus_h0_derivative():
    h = 1e-4
    fd = (hankel1(0, 2 + h) - hankel1(0, 2 - h)) / (2 * h)
    assert abs(hankel1(1, 2.0) + fd) < 1e-8
    assert abs(hankel1_derivative(0, 2.0) - fd) < 1e-8


def test_fast_paths_match_generic():
    x = np.geomspace(1e-4, 200, 80)
    assert np.allclose(h0(x), hankel1(0, x), rtol=1e-14)
    assert np.allclose(h1(x), hankel1(1, x), rtol=1e-14)


def test_series_agree_with_library():
    z = np.array([0.01, 0.3, 1.0, 2.5, 5.0])
    for order in (0, 1):
        assert np.allclose(series_j(order, z), bessel_j(order, z), rtol=1e-13, atol=1e-15)
        assert np.allclose(series_y(order, z), bessel_y(order, z), rtol=1e-12, atol=1e-15)


def test_recurrence():
    x = 3.7
    for m in range(1, 6):
        lhs = hankel1(m - 1, x) + hankel1(m + 1, x)
        assert lhs == pytest.approx(2 * m / x * hankel1(m, x), rel=1e-13)


@pytest.mark.parametrize("call", [lambda: bessel_y(0, 0.0), lambda: hankel1(1, -1.0), lambda: bessel_j(-1, 1.0),
                                  lambda: bessel_j(0.5, 1.0), lambda: series_j(2, 1.0)])
def test_domain_errors(call):
    with pytest.raises(ValueError):
        call()
