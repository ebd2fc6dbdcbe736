"""Parameterized boundary-integral kernels and their singular splittings.

Kernels carry the factor 2 of the boundary operators, e.g. the single-layer
kernel is ``(i/2) H0(kappa |p(t) - p(s)|)``. Every function takes an
observation frame (rows, parameter ``t``) and a source frame (columns,
parameter ``s``) and returns the kernel matrix of shape ``(len(t), len(s))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .special import h0, h1
from .exceptions import CoincidentPointsError
from .geometry import CurveFrame

_TINY = 1e-300


def _pair_geometry(obs: CurveFrame, src: CurveFrame):
    obs_p = np.atleast_2d(obs.p)
    src_p = np.atleast_2d(src.p)
    diff = src_p[None, :, :] - obs_p[:, None, :]          # p(s) - p(t)
    dist = np.hypot(diff[..., 0], diff[..., 1])
    n_dot = np.einsum("ik,ijk->ij", np.atleast_2d(obs.n), diff)
    np_dot = np.einsum("ik,ijk->ij", np.atleast_2d(obs.n_perp), diff)
    return diff, dist, n_dot, np_dot


def _require_distinct(dist):
    if np.any(dist <= _TINY):
        raise CoincidentPointsError("kernel evaluated at coincident points")


def kernel_K(obs: CurveFrame, src: CurveFrame, kappa: float) -> np.ndarray:
    """``(i kappa/2) n(t).(p(s)-p(t)) H1(kappa d)/d``."""
    _, dist, n_dot, _ = _pair_geometry(obs, src)
    _require_distinct(dist)
    return 0.5j * kappa * n_dot * h1(kappa * dist) / dist


def kernel_H(obs: CurveFrame, src: CurveFrame, kappa: float) -> np.ndarray:
    """``(i kappa/2) n_perp(t).(p(s)-p(t)) H1(kappa d)/d``."""
    _, dist, _, np_dot = _pair_geometry(obs, src)
    _require_distinct(dist)
    return 0.5j * kappa * np_dot * h1(kappa * dist) / dist


def single_layer_kernel(obs: CurveFrame, src: CurveFrame, kappa: float) -> np.ndarray:
    """``(i/2) H0(kappa |p(t) - p(s)|)``."""
    _, dist, _, _ = _pair_geometry(obs, src)
    _require_distinct(dist)
    return 0.5j * h0(kappa * dist)


@dataclass(frozen=True)
class KernelSplit:
    """Split kernels on one curve, each ``(len(t), len(s))``.

    ``K = K1 L + K2`` and ``H = H1 / sin(s - t) + H2 L + H3`` with
    ``L = ln(4 sin^2((t - s)/2))``.
    """

    K1: np.ndarray
    K2: np.ndarray
    H1: np.ndarray
    H2: np.ndarray
    H3: np.ndarray


def log_term(t, s):
    """``ln(4 sin^2((t - s)/2))`` with zero placed on the diagonal ``t == s``."""
    delta = np.subtract.outer(np.atleast_1d(t), np.atleast_1d(s))
    diag = delta == 0
    val = 4.0 * np.sin(0.5 * delta) ** 2
    return np.where(diag, 0.0, np.log(np.where(diag, 1.0, val))), diag


def split_kernels(frame_t: CurveFrame, frame_s: CurveFrame, kappa: float) -> KernelSplit:
    """Singular splitting of K and H for two parameter sets on the same curve.

    Where ``t == s`` exactly the analytic diagonal limits are substituted:
    ``K1 = 0``, ``K2 = n.p''/(2 pi |p'|^2)``, ``H1 = 1/pi``, ``H2 = H3 = 0``.
    """
    t = np.atleast_1d(frame_t.t)
    s = np.atleast_1d(frame_s.t)
    _, dist, n_dot, np_dot = _pair_geometry(frame_t, frame_s)
    L, diag = log_term(t, s)
    d = np.where(diag, 1.0, dist)
    if np.any(~diag & (dist <= _TINY)):
        raise CoincidentPointsError("distinct parameters map to the same point")
    z = kappa * d
    hz = h1(z)
    j1 = hz.real
    ratio = np.where(diag, 0.0, 1.0 / d)

    K = 0.5j * kappa * n_dot * hz * ratio
    K1 = -(kappa / (2 * math.pi)) * n_dot * j1 * ratio
    K2 = K - K1 * L
    G2 = np.sum(np.atleast_2d(frame_t.dp) ** 2, axis=-1)
    k2_diag = np.einsum("ik,ik->i", np.atleast_2d(frame_t.n), np.atleast_2d(frame_t.ddp)) / (2 * math.pi * G2)
    K2 = np.where(diag, k2_diag[:, None], K2)

    H = 0.5j * kappa * np_dot * hz * ratio
    cauchy = np_dot * ratio**2 / math.pi           # H1 / sin(s - t), no division by sin
    sin_st = np.sin(-np.subtract.outer(t, s))
    H1 = np.where(diag, 1.0 / math.pi, cauchy * sin_st)
    H2 = -(kappa / (2 * math.pi)) * np_dot * j1 * ratio
    H3 = np.where(diag, 0.0, H - cauchy - H2 * L)
    return KernelSplit(K1=K1, K2=K2, H1=H1, H2=H2, H3=H3)


def kernel_K_split(frame_t: CurveFrame, frame_s: CurveFrame, kappa: float):
    """``(K1, K2)`` of the normal-derivative kernel."""
    sp = split_kernels(frame_t, frame_s, kappa)
    return sp.K1, sp.K2


def kernel_H_split(frame_t: CurveFrame, frame_s: CurveFrame, kappa: float):
    """``(H1, H2, H3)`` of the tangential-derivative kernel."""
    sp = split_kernels(frame_t, frame_s, kappa)
    return sp.H1, sp.H2, sp.H3
