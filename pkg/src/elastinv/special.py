"""Bessel and Hankel functions of integer order and real argument.

Values come from :mod:`scipy.special` (Amos/Cephes). The ascending power
series for orders 0 and 1 are kept alongside as an independent route; the
kernel splitting relies on exactly that series structure.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

EULER_GAMMA = 0.5772156649015329


def _check_order(order):
    if int(order) != order or order < 0:
        raise ValueError(f"order must be a nonnegative integer, got {order}")


def bessel_j(order, x):
    """``J_order(x)`` for ``x >= 0``."""
    _check_order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("bessel_j is defined here for x >= 0 only")
    return _sp.jv(order, x)


def bessel_y(order, x):
    """``Y_order(x)`` for ``x > 0``."""
    _check_order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("bessel_y requires x > 0")
    return _sp.yv(order, x)


def hankel1(order, x):
    """``H^(1)_order(x) = J_order(x) + i Y_order(x)`` for ``x > 0``."""
    _check_order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("hankel1 requires x > 0")
    return _sp.jv(order, x) + 1j * _sp.yv(order, x)


def h0(x):
    """``H^(1)_0`` for positive real arrays through the dedicated order-0 routines."""
    return _sp.j0(x) + 1j * _sp.y0(x)


def h1(x):
    """``H^(1)_1`` for positive real arrays through the dedicated order-1 routines."""
    return _sp.j1(x) + 1j * _sp.y1(x)


def hankel1_derivative(order, x):
    """``H'_m(x) = H_{m-1}(x) - (m/x) H_m(x)``, with ``H_{-1} = -H_1``."""
    order = np.asarray(order)
    x = np.asarray(x, dtype=float)
    return _sp.hankel1(order - 1, x) - order / x * _sp.hankel1(order, x)


def _digamma_sum(k):
    return sum(1.0 / m for m in range(1, k + 1))


def series_j(order, z, terms=60):
    """Ascending series ``sum (-1)^k/(k!(k+n)!) (z/2)^(2k+n)``, orders 0 and 1."""
    if order not in (0, 1):
        raise ValueError("series implemented for orders 0 and 1")
    z = np.asarray(z, dtype=float)
    total = np.zeros_like(z)
    for k in range(terms):
        total = total + (-1) ** k / (math.factorial(k) * math.factorial(k + order)) * (z / 2) ** (2 * k + order)
    return total


def series_y(order, z, terms=60):
    """Neumann series for orders 0 and 1 (``psi(k) = 1 + ... + 1/k``)."""
    z = np.asarray(z, dtype=float)
    lead = 2.0 / np.pi * (np.log(z / 2) + EULER_GAMMA) * series_j(order, z, terms)
    tail = np.zeros_like(z)
    if order == 0:
        for k in range(1, terms):
            tail = tail + (-1) ** (k + 1) * _digamma_sum(k) / math.factorial(k) ** 2 * (z / 2) ** (2 * k)
        return lead + 2.0 / np.pi * tail
    if order == 1:
        for k in range(terms):
            c = (-1) ** k / (math.factorial(k) * math.factorial(k + 1))
            tail = tail + c * (_digamma_sum(k + 1) + _digamma_sum(k)) * (z / 2) ** (2 * k + 1)
        return lead - 2.0 / (np.pi * z) - tail / np.pi
    raise ValueError("series implemented for orders 0 and 1")
