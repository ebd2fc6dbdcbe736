"""Fourier-Bessel solution of the coupled Helmholtz problem for a rigid disk.

Independent of the boundary-integral machinery: the incident boundary data
are expanded with the Jacobi-Anger identity and each angular mode gives a
2x2 system for the outgoing coefficients
``phi = sum a_m H_m(kp rho) e^{im theta}``, ``psi = sum b_m H_m(ks rho) e^{im theta}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .exceptions import ModalSingularError, TruncationError
from .forward import FarField
from .medium import ElasticMedium, IncidentWave, WaveKind

TAIL_TOL = 1e-14
MAX_MODES = 4096


@dataclass
class ModalSolution:
    """Coefficients ``a[m + n_modes]``, ``b[m + n_modes]`` for ``|m| <= n_modes``."""

    n_modes: int
    a: np.ndarray
    b: np.ndarray
    radius: float
    center: np.ndarray

    @property
    def orders(self):
        return np.arange(-self.n_modes, self.n_modes + 1)


def incident_modes(wave: IncidentWave, medium: ElasticMedium, R, orders, center=(0.0, 0.0)):
    """Fourier coefficients of ``f1 = -nu.u_inc`` and ``f2 = -tau.u_inc`` on the circle."""
    kappa = wave.wavenumber(medium)
    th = wave.theta
    phase = wave.amplitude * np.exp(1j * kappa * (np.asarray(center, dtype=float) @ wave.d))

    def E(m):
        return 1j ** (m % 4) * _sp.jv(m, kappa * R) * np.exp(-1j * m * th)

    cos_m = 0.5 * (np.exp(-1j * th) * E(orders - 1) + np.exp(1j * th) * E(orders + 1))
    sin_m = (np.exp(-1j * th) * E(orders - 1) - np.exp(1j * th) * E(orders + 1)) / 2j
    # P: nu.d = cos, tau.d = -sin;  S: nu.d_perp = sin, tau.d_perp = cos  (angle phi - theta)
    if wave.kind is WaveKind.P:
        return -phase * cos_m, phase * sin_m
    return -phase * sin_m, -phase * cos_m


def _solve_modes(R, medium, wave, n_modes, center):
    m = np.arange(-n_modes, n_modes + 1)
    kp, ks = medium.kappa_p, medium.kappa_s
    f1, f2 = incident_modes(wave, medium, R, m, center)
    Hp, Hs = _sp.hankel1(m, kp * R), _sp.hankel1(m, ks * R)
    dHp = _sp.hankel1(m - 1, kp * R) - m / (kp * R) * Hp
    dHs = _sp.hankel1(m - 1, ks * R) - m / (ks * R) * Hs
    m11, m12 = kp * dHp, 1j * m / R * Hs
    m21, m22 = 1j * m / R * Hp, -ks * dHs
    det = m11 * m22 - m12 * m21
    scale = np.abs(m11 * m22) + np.abs(m12 * m21)
    bad = np.abs(det) <= 1e-14 * scale
    if np.any(bad):
        mode = int(m[np.argmax(bad)])
        raise ModalSingularError(f"modal system singular at m={mode}", mode=mode)
    a = (f1 * m22 - m12 * f2) / det
    b = (m11 * f2 - m21 * f1) / det
    return a, b


def disk_modal_solve(R: float, medium: ElasticMedium, wave: IncidentWave, center=(0.0, 0.0),
                     n_modes: int | None = None) -> ModalSolution:
    """Modal coefficients for the rigid disk of radius ``R`` at ``center``.

    Without ``n_modes`` the truncation starts at ``ceil(ks R) + 20`` and
    doubles until the outermost coefficients fall below ``1e-14 max|a|``.
    """
    center = np.asarray(center, dtype=float)
    fixed = n_modes is not None
    N = n_modes if fixed else math.ceil(medium.kappa_s * R) + 20
    while True:
        a, b = _solve_modes(R, medium, wave, N, center)
        ref = max(np.abs(a).max(), np.abs(b).max())
        tail = max(abs(a[0]), abs(a[-1]), abs(b[0]), abs(b[-1]))
        if fixed or ref == 0 or tail <= TAIL_TOL * ref:
            return ModalSolution(N, a, b, float(R), center)
        N *= 2
        if N > MAX_MODES:
            raise TruncationError(f"modal tail did not decay below {TAIL_TOL} by {MAX_MODES} modes")


def _pattern(coef, orders, kappa, angles):
    c = coef * np.exp(-0.5j * math.pi * orders)
    return math.sqrt(2 / (math.pi * kappa)) * np.exp(-0.25j * math.pi) * (np.exp(1j * np.outer(angles, orders)) @ c)


def disk_far_field(sol: ModalSolution, medium: ElasticMedium, directions) -> FarField:
    """Far-field patterns of the modal solution (translated by the disk center)."""
    angles = np.asarray(directions, dtype=float)
    m = sol.orders
    xhat = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    shift = xhat @ sol.center
    phi = _pattern(sol.a, m, medium.kappa_p, angles) * np.exp(-1j * medium.kappa_p * shift)
    psi = _pattern(sol.b, m, medium.kappa_s, angles) * np.exp(-1j * medium.kappa_s * shift)
    return FarField(angles, phi, psi)


def disk_potentials(sol: ModalSolution, medium: ElasticMedium, x):
    """``phi(x), psi(x)`` by direct modal summation at exterior points."""
    x = np.atleast_2d(np.asarray(x, dtype=float)) - sol.center
    rho = np.hypot(x[:, 0], x[:, 1])
    ang = np.arctan2(x[:, 1], x[:, 0])
    m = sol.orders
    e = np.exp(1j * np.outer(ang, m))
    phi = np.sum(_sp.hankel1(m, medium.kappa_p * rho[:, None]) * e * sol.a, axis=1)
    psi = np.sum(_sp.hankel1(m, medium.kappa_s * rho[:, None]) * e * sol.b, axis=1)
    return phi, psi


def boundary_residual(sol: ModalSolution, medium: ElasticMedium, wave: IncidentWave, num=256):
    """Max mismatch of ``d_nu phi + d_tau psi = f1`` and ``d_tau phi - d_nu psi = f2``."""
    from .medium import incident_field

    ang = 2 * math.pi * np.arange(num) / num
    m = sol.orders
    R = sol.radius
    kp, ks = medium.kappa_p, medium.kappa_s
    e = np.exp(1j * np.outer(ang, m))
    dHp = _sp.hankel1(m - 1, kp * R) - m / (kp * R) * _sp.hankel1(m, kp * R)
    dHs = _sp.hankel1(m - 1, ks * R) - m / (ks * R) * _sp.hankel1(m, ks * R)
    dphi_dnu = e @ (sol.a * kp * dHp)
    dpsi_dnu = e @ (sol.b * ks * dHs)
    dphi_dtau = e @ (sol.a * 1j * m / R * _sp.hankel1(m, kp * R))
    dpsi_dtau = e @ (sol.b * 1j * m / R * _sp.hankel1(m, ks * R))
    nu = np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    tau = np.stack([-np.sin(ang), np.cos(ang)], axis=-1)
    u = incident_field(wave, medium, sol.center + R * nu)
    f1 = -np.sum(nu * u, axis=-1)
    f2 = -np.sum(tau * u, axis=-1)
    return float(max(np.abs(dphi_dnu + dpsi_dtau - f1).max(), np.abs(dphi_dtau - dpsi_dnu - f2).max()))
