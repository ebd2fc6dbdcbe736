"""Trigonometric-interpolation quadratures on the grid ``s_j = pi j / n``.

``log_weights`` integrates ``ln(4 sin^2((t - s)/2)) f(s)`` and
``cauchy_weights`` the principal value of ``f(s) / sin(s - t)`` for ``t`` on
the grid; both depend only on the index difference ``i - j`` (mod ``2n``).
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.linalg import circulant


def nodes(n: int) -> np.ndarray:
    """The ``2n`` equidistant nodes ``pi j / n``."""
    return math.pi * np.arange(2 * n) / n


def _frozen(a):
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def log_weights(n: int) -> np.ndarray:
    """``R_j`` for ``j = 0..2n-1`` (weights for collocation at ``t = 0``)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    j = np.arange(2 * n)
    m = np.arange(1, n)
    R = -(2 * math.pi / n) * (np.cos(np.outer(j, m) * math.pi / n) @ (1.0 / m))
    R -= (-1.0) ** j * math.pi / n**2
    return _frozen(R)


def cauchy_kernel(n: int, s) -> np.ndarray:
    """Weight function ``T(s)`` with ``int f(s')/sin(s'-t) ~ sum_j T(t - s_j) f(s_j)``."""
    s = np.asarray(s, dtype=float)
    if n % 2:
        m = np.arange((n - 3) // 2 + 1) if n >= 3 else np.arange(0)
        extra = -(math.pi / n) * np.sin(n * s)
    else:
        m = np.arange(n // 2)
        extra = 0.0
    return -(2 * math.pi / n) * np.sin(np.multiply.outer(s, 2 * m + 1)).sum(axis=-1) + extra


@lru_cache(maxsize=None)
def cauchy_weights(n: int) -> np.ndarray:
    """``T_k = T(k pi / n)`` for ``k = 0..2n-1``; ``T_{-k} = T_{2n-k} = -T_k``.

    The entry of the Nystrom matrix for collocation node ``i`` and source node
    ``j`` is ``T_{(i - j) mod 2n}``. Values are computed once for
    ``k <= n`` and mirrored by oddness so the table is exactly antisymmetric.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(n + 1)
    half = cauchy_kernel(n, k * math.pi / n)
    half[0] = 0.0
    half[n] = 0.0
    T = np.empty(2 * n)
    T[: n + 1] = half
    T[n + 1:] = -half[1:n][::-1]
    return _frozen(T)


@lru_cache(maxsize=None)
def log_matrix(n: int) -> np.ndarray:
    """Circulant matrix ``R_{|i-j|}``."""
    return _frozen(circulant(log_weights(n)))


@lru_cache(maxsize=None)
def cauchy_matrix(n: int) -> np.ndarray:
    """Circulant matrix ``T_{i-j}``."""
    return _frozen(circulant(cauchy_weights(n)))


def trapezoid(n: int, samples) -> complex:
    """``(pi/n) sum f(s_j)``: the periodic trapezoid rule on ``2n`` nodes."""
    samples = np.asarray(samples)
    if samples.shape[-1] != 2 * n:
        raise ValueError(f"expected {2 * n} samples, got {samples.shape[-1]}")
    return (math.pi / n) * samples.sum(axis=-1)
