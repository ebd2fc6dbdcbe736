"""Nystrom solver for the coupled single-layer boundary integral equations.

Unknowns are the Jacobian-weighted densities ``phi_j = G g_j`` sampled at the
nodes ``s_i = pi i / n`` of every boundary, ordered
``[phi1_D, phi2_D, phi1_B, phi2_B, ...]``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla
from scipy import special as _sp

from . import quadrature
from .special import h0, h1
from .exceptions import CoincidentPointsError, OverlappingBoundariesError, SingularSystemError
from .geometry import CurveFrame, RadialCurve, boundary_separation
from .kernels import _pair_geometry, kernel_H, kernel_K, split_kernels
from .medium import ElasticMedium, IncidentWave, ModeFlags, boundary_data

COND_LIMIT = 1e12


def gamma(kappa):
    """Far-field constant ``exp(i pi/4) / sqrt(8 pi kappa)``."""
    return np.exp(0.25j * math.pi) / math.sqrt(8 * math.pi * kappa)


def observation_angles(n_bar: int) -> np.ndarray:
    """``2 n_bar`` uniformly spaced observation angles."""
    return math.pi * np.arange(2 * n_bar) / n_bar


@dataclass
class DensityPair:
    """Solved densities on one or more boundaries.

    ``phi1`` and ``phi2`` have shape ``(n_boundaries, 2n)``.
    """

    n: int
    curves: tuple
    phi1: np.ndarray
    phi2: np.ndarray
    condition: float = float("nan")
    frames: tuple = field(default=(), repr=False)

    def __post_init__(self):
        self.phi1 = np.atleast_2d(self.phi1)
        self.phi2 = np.atleast_2d(self.phi2)
        if self.phi1.shape != (len(self.curves), 2 * self.n) or self.phi2.shape != self.phi1.shape:
            raise ValueError("density arrays must have shape (n_boundaries, 2n)")
        if not self.frames:
            s = quadrature.nodes(self.n)
            self.frames = tuple(c.frame(s) for c in self.curves)


@dataclass
class FarField:
    """Far-field samples at uniformly spaced observation angles.

    For phased data ``phi`` and ``psi`` hold the complex patterns; when
    ``phaseless`` is set they hold the squared moduli.
    """

    directions: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    phaseless: bool = False

    def __post_init__(self):
        self.directions = np.asarray(self.directions, dtype=float)
        dtype = float if self.phaseless else complex
        self.phi = np.asarray(self.phi, dtype=dtype)
        self.psi = np.asarray(self.psi, dtype=dtype)
        N = self.directions.size
        if N % 2 or self.phi.shape != (N,) or self.psi.shape != (N,):
            raise ValueError("far field needs an even number of directions and matching samples")

    @property
    def n_bar(self):
        return self.directions.size // 2

    def modulus_squared(self) -> "FarField":
        if self.phaseless:
            return self
        return FarField(self.directions, np.abs(self.phi) ** 2, np.abs(self.psi) ** 2, phaseless=True)

    def combined(self, mode: ModeFlags) -> np.ndarray:
        """``a_p phi + a_s psi``."""
        return mode.a_p * self.phi + mode.a_s * self.psi


@dataclass
class ElasticFarField:
    directions: np.ndarray
    vp: np.ndarray
    vs: np.ndarray


def _self_block(frame, medium, n):
    kp, ks = medium.kappa_p, medium.kappa_s
    R = quadrature.log_matrix(n)
    T = quadrature.cauchy_matrix(n)
    w = math.pi / n
    sp_p = split_kernels(frame, frame, kp)
    sp_s = split_kernels(frame, frame, ks)
    eye = np.eye(2 * n)
    a11 = -eye + R * sp_p.K1 + w * sp_p.K2
    a12 = T * sp_s.H1 + R * sp_s.H2 + w * sp_s.H3
    a21 = T * sp_p.H1 + R * sp_p.H2 + w * sp_p.H3
    a22 = eye - (R * sp_s.K1 + w * sp_s.K2)
    return np.block([[a11, a12], [a21, a22]])


def _cross_block(obs, src, medium, n):
    # same blocks as kernel_K / kernel_H, sharing one Hankel evaluation per wavenumber
    _, dist, n_dot, np_dot = _pair_geometry(obs, src)
    if np.any(dist <= 0):
        raise CoincidentPointsError("boundaries share a quadrature point")
    w = math.pi / n
    radial = {k: 0.5j * k * w * h1(k * dist) / dist
              for k in (medium.kappa_p, medium.kappa_s)}
    rp, rs = radial[medium.kappa_p], radial[medium.kappa_s]
    return np.block([[n_dot * rp, np_dot * rs], [np_dot * rp, -n_dot * rs]])


def assemble(curves, medium: ElasticMedium, n: int):
    """Dense Nystrom matrix for any number of disjoint boundaries.

    Returns ``(A, frames)`` with ``A`` of size ``4n * len(curves)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    s = quadrature.nodes(n)
    frames = tuple(c.frame(s) for c in curves)
    blocks = [[_self_block(fo, medium, n) if a == b else _cross_block(fo, fs, medium, n)
               for b, fs in enumerate(frames)] for a, fo in enumerate(frames)]
    return np.block(blocks), frames


def assemble_single(curve: RadialCurve, medium: ElasticMedium, n: int):
    """``4n x 4n`` system for a single obstacle."""
    return assemble((curve,), medium, n)


def separation_tolerance(medium: ElasticMedium) -> float:
    """A tenth of the shear wavelength."""
    return 0.1 * 2 * math.pi / medium.kappa_s


def check_separation(curve: RadialCurve, ball: RadialCurve, medium: ElasticMedium):
    sep = boundary_separation(curve, ball)
    tol = separation_tolerance(medium)
    if sep < tol:
        raise OverlappingBoundariesError(
            f"obstacle and reference ball are {sep:.3g} apart; need at least {tol:.3g}")
    return sep


def assemble_two_domain(curve: RadialCurve, ball: RadialCurve, medium: ElasticMedium, n: int):
    """``8n x 8n`` system for an obstacle plus the reference ball."""
    check_separation(curve, ball, medium)
    return assemble((curve, ball), medium, n)


def solve(curves, medium: ElasticMedium, wave: IncidentWave, n: int) -> DensityPair:
    """Assemble and solve the field equations on ``curves``."""
    curves = tuple(curves)
    A, frames = assemble(curves, medium, n)
    s = quadrature.nodes(n)
    rhs = np.concatenate([np.concatenate(boundary_data(wave, c, medium, s)) for c in curves])
    lu, piv = sla.lu_factor(A, check_finite=False)
    anorm = np.linalg.norm(A, 1)
    rcond, _ = sla.lapack.zgecon(lu, anorm, norm="1")
    cond = np.inf if rcond == 0 else 1.0 / rcond
    if cond > COND_LIMIT:
        raise SingularSystemError(
            f"Nystrom system is near-singular (condition ~ {cond:.2e}); the frequency may be "
            "close to an interior resonance, perturb omega slightly", condition=cond)
    x = sla.lu_solve((lu, piv), rhs, check_finite=False).reshape(len(curves), 2, 2 * n)
    return DensityPair(n=n, curves=curves, phi1=x[:, 0], phi2=x[:, 1], condition=cond, frames=frames)


def solve_single(curve, medium, wave, n) -> DensityPair:
    return solve((curve,), medium, wave, n)


def solve_two_domain(curve, ball, medium, wave, n) -> DensityPair:
    check_separation(curve, ball, medium)
    return solve((curve, ball), medium, wave, n)


def far_field_operator(frame: CurveFrame, density, kappa, angles, n) -> np.ndarray:
    """Trapezoid rule for ``gamma int exp(-i kappa xhat.p(s)) phi(s) ds``."""
    xhat = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    phase = np.exp(-1j * kappa * (xhat @ frame.p.T))
    return gamma(kappa) * (math.pi / n) * (phase @ density)


def far_field(densities: DensityPair, medium: ElasticMedium, n_bar: int, boundaries=None) -> FarField:
    """Far-field patterns of ``phi`` and ``psi`` at ``2 n_bar`` directions.

    ``boundaries`` restricts the sum to the given boundary indices.
    """
    angles = observation_angles(n_bar)
    idx = range(len(densities.curves)) if boundaries is None else boundaries
    n = densities.n
    phi = sum(far_field_operator(densities.frames[b], densities.phi1[b], medium.kappa_p, angles, n) for b in idx)
    psi = sum(far_field_operator(densities.frames[b], densities.phi2[b], medium.kappa_s, angles, n) for b in idx)
    return FarField(angles, phi, psi)


def elastic_lift(ff: FarField, medium: ElasticMedium) -> ElasticFarField:
    """Elastic far fields ``i kp phi xhat`` and ``-i ks psi xhat_perp``."""
    if ff.phaseless:
        raise ValueError("the elastic lift needs phased far-field data")
    a = ff.directions
    xhat = np.stack([np.cos(a), np.sin(a)], axis=-1)
    xperp = np.stack([-np.sin(a), np.cos(a)], axis=-1)
    vp = 1j * medium.kappa_p * ff.phi[:, None] * xhat
    vs = -1j * medium.kappa_s * ff.psi[:, None] * xperp
    return ElasticFarField(a, vp, vs)


def _distances(densities, x):
    out = []
    for frame in densities.frames:
        diff = x[:, None, :] - frame.p[None, :, :]
        out.append((diff, np.hypot(diff[..., 0], diff[..., 1])))
    return out


def _warn_if_close(densities, geo):
    n = densities.n
    for frame, (_, dist) in zip(densities.frames, geo):
        spacing = (math.pi / n) * frame.G.max()
        if np.any(dist.min(axis=1) < 5 * spacing):
            warnings.warn("near-field point within 5 node spacings of a boundary; accuracy degraded",
                          stacklevel=3)
            return


def near_field(densities: DensityPair, medium: ElasticMedium, x):
    """Potentials ``phi(x), psi(x)`` of the single layers at exterior points ``x``."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    geo = _distances(densities, x)
    _warn_if_close(densities, geo)
    w = math.pi / densities.n
    phi = sum(0.25j * w * h0(medium.kappa_p * d) @ g for (_, d), g in zip(geo, densities.phi1))
    psi = sum(0.25j * w * h0(medium.kappa_s * d) @ g for (_, d), g in zip(geo, densities.phi2))
    return phi, psi


def scattered_displacement(densities: DensityPair, medium: ElasticMedium, x):
    """Compressional ``grad phi`` and shear ``curl psi`` parts at points ``x``.

    Returns two arrays of shape ``(len(x), 2)``.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    geo = _distances(densities, x)
    _warn_if_close(densities, geo)
    w = math.pi / densities.n
    vp = np.zeros(x.shape, dtype=complex)
    grad_psi = np.zeros(x.shape, dtype=complex)
    for (diff, d), g1, g2 in zip(geo, densities.phi1, densities.phi2):
        for kappa, g, acc in ((medium.kappa_p, g1, vp), (medium.kappa_s, g2, grad_psi)):
            coef = -0.25j * kappa * w * h1(kappa * d) / d * g
            acc += np.einsum("ij,ijk->ik", coef, diff)
    vs = np.stack([grad_psi[:, 1], -grad_psi[:, 0]], axis=-1)
    return vp, vs
