"""Linearized data equations, Tikhonov updates and the iterative reconstructions.

Phased data (``run_algorithm_I``) linearize ``a_p S_kp^inf phi1 + a_s S_ks^inf phi2``
with respect to the star-curve parameters; phaseless data (``run_algorithm_II``)
linearize the squared modulus of the total far field of obstacle plus a fixed
reference ball.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import forward, quadrature
from .exceptions import (NonpositiveRadiusError, OverlappingBoundariesError, SingularSystemError,
                         ZeroResidualError)
from .forward import DensityPair, FarField, gamma, observation_angles
from .geometry import (CircleBoundary, RadialCurve, ShapeUpdate, StarCurve, apply_update,
                       curve_l2_error)
from .medium import ElasticMedium, IncidentWave, ModeFlags

logger = logging.getLogger(__name__)


@dataclass
class ReconstructionConfig:
    """Solver parameters shared by both algorithms."""

    M: int = 6
    n: int = 64
    n_bar: int = 32
    rho: float = 0.9
    epsilon: float = 0.01
    delta: float = 0.0
    max_iters: int = 100
    mode: ModeFlags = field(default_factory=ModeFlags)
    reference_ball: CircleBoundary | None = None
    rng_seed: int = 0
    penalty: str = "h2"
    linearization: str = "frozen"
    fd_step: float = 1e-6

    def __post_init__(self):
        if self.M < 2:
            raise ValueError("truncation M must be > 1")
        if not 0 < self.rho <= 1:
            raise ValueError("rho must lie in (0, 1]")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")
        if self.penalty not in ("h2", "identity"):
            raise ValueError("penalty must be 'h2' or 'identity'")
        if self.linearization not in ("frozen", "full"):
            raise ValueError("linearization must be 'frozen' or 'full'")
        if not 2 * self.M + 3 < 4 * self.n_bar:
            raise ValueError("need 2M+3 < 4 n_bar for an overdetermined linearization")


@dataclass
class IterationRecord:
    k: int
    curve: StarCurve
    E: float
    Err: float
    lam: float


@dataclass
class IterationTrace:
    records: list = field(default_factory=list)
    status: str = "running"
    message: str = ""

    @property
    def converged(self):
        return self.status == "converged"

    @property
    def final_curve(self):
        return self.records[-1].curve

    @property
    def E(self):
        return np.array([r.E for r in self.records])

    @property
    def Err(self):
        return np.array([r.Err for r in self.records])

    @property
    def lam(self):
        return np.array([r.lam for r in self.records])

    def __len__(self):
        return len(self.records)


# -- discrete norms and error estimators ------------------------------------

def l2_norm(values) -> float:
    """Discrete L2 norm on the unit circle, uniform weight ``2 pi / N``."""
    values = np.asarray(values)
    return math.sqrt(2 * math.pi / values.size * float(np.sum(np.abs(values) ** 2)))


def _relative(residual, reference):
    denom = l2_norm(reference)
    if denom == 0:
        raise ZeroResidualError("data are identically zero")
    return l2_norm(residual) / denom


def stopping_error_phased(data: FarField, model: FarField, mode: ModeFlags) -> float:
    """Relative residual of the phased data equation."""
    return _relative(data.combined(mode) - model.combined(mode), data.combined(mode))


def stopping_error_phaseless(data: FarField, model: FarField, mode: ModeFlags) -> float:
    """Relative residual of the squared-modulus data equation."""
    data = data.modulus_squared()
    model = model.modulus_squared()
    return _relative(data.combined(mode) - model.combined(mode), data.combined(mode))


def lambda_schedule(previous_residual_norm: float) -> float:
    """Regularization parameter equal to the previous data residual norm."""
    if not previous_residual_norm > 0:
        raise ZeroResidualError("residual vanished; the iteration should already have stopped")
    return float(previous_residual_norm)


# -- noise ------------------------------------------------------------------

def inject_noise(data: FarField, delta: float, seed: int) -> FarField:
    """Multiplicative uniform noise of relative level ``delta``.

    Phased samples become ``u (1 + delta (eta1 + i eta2))``, squared moduli
    ``|u|^2 (1 + delta eta)``, with all ``eta`` uniform on ``[-1, 1]`` from a
    Philox stream keyed by ``seed``.
    """
    if delta < 0:
        raise ValueError("noise level must be nonnegative")
    if delta == 0:
        return replace(data)
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    N = data.directions.size
    if data.phaseless:
        eta = rng.uniform(-1.0, 1.0, size=(2, N))
        return FarField(data.directions, data.phi * (1 + delta * eta[0]),
                        data.psi * (1 + delta * eta[1]), phaseless=True)
    eta = rng.uniform(-1.0, 1.0, size=(4, N))
    return FarField(data.directions, data.phi * (1 + delta * (eta[0] + 1j * eta[1])),
                    data.psi * (1 + delta * (eta[2] + 1j * eta[3])))


# -- Frechet derivative and Jacobians ---------------------------------------

def _phase_kernel(frame, density, kappa, angles, n):
    """``-i kappa gamma (pi/n) exp(-i kappa xhat(t_i).p(s_j)) phi(s_j)``."""
    xhat = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    E = np.exp(-1j * kappa * (xhat @ frame.p.T)) * density
    return -1j * kappa * gamma(kappa) * (math.pi / n) * E


def frechet_far_field(curve: StarCurve, density, kappa: float, update: ShapeUpdate, angles) -> np.ndarray:
    """Derivative of the far-field operator along ``update`` with the density held fixed."""
    density = np.asarray(density)
    n = density.size // 2
    s = quadrature.nodes(n)
    frame = curve.frame(s)
    angles = np.asarray(angles, dtype=float)
    xhat = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    q = update.displacement(s)
    return np.sum(_phase_kernel(frame, density, kappa, angles, n) * (xhat @ q.T), axis=1)


def far_field_columns(curve: StarCurve, density, kappa: float, angles, M: int) -> np.ndarray:
    """Columns ``B1c, B2c, B^r_{1,0..M}, B^r_{2,1..M}`` for one wavenumber."""
    density = np.asarray(density)
    n = density.size // 2
    s = quadrature.nodes(n)
    frame = curve.frame(s)
    E = _phase_kernel(frame, density, kappa, angles, n)
    C = np.cos(np.subtract.outer(angles, s)) * E
    m = np.arange(M + 1)
    cols = [np.cos(angles) * E.sum(axis=1), np.sin(angles) * E.sum(axis=1),
            C @ np.cos(np.outer(s, m)), C @ np.sin(np.outer(s, m[1:]))]
    return np.column_stack(cols)


def _mode_terms(densities: DensityPair, medium, mode, boundary=0):
    terms = []
    if mode.a_p:
        terms.append((mode.a_p, medium.kappa_p, densities.phi1[boundary]))
    if mode.a_s:
        terms.append((mode.a_s, medium.kappa_s, densities.phi2[boundary]))
    return terms


def phased_jacobian(curve: StarCurve, densities: DensityPair, medium: ElasticMedium, mode: ModeFlags,
                    data: FarField, M: int | None = None):
    """Linearized phased data equation: ``B`` (N x (2M+3), complex) and residual ``w``."""
    M = curve.M if M is None else M
    angles = data.directions
    B = sum(a * far_field_columns(curve, phi, kappa, angles, M)
            for a, kappa, phi in _mode_terms(densities, medium, mode))
    model = forward.far_field(densities, medium, data.n_bar)
    w = data.combined(mode) - model.combined(mode)
    return B, w, model


def phaseless_jacobian(curve: StarCurve, densities: DensityPair, medium: ElasticMedium, mode: ModeFlags,
                       data: FarField, M: int | None = None):
    """Linearized squared-modulus equation: real ``A`` and residual ``w``.

    Only the obstacle (boundary 0) is differentiated; the ball is fixed.
    """
    M = curve.M if M is None else M
    angles = data.directions
    model = forward.far_field(densities, medium, data.n_bar)
    totals = {"p": model.phi, "s": model.psi}
    A = 0.0
    for a, kappa, phi in _mode_terms(densities, medium, mode):
        total = totals["p"] if kappa == medium.kappa_p and mode.a_p else totals["s"]
        A = A + a * 2.0 * np.real(np.conj(total)[:, None] * far_field_columns(curve, phi, kappa, angles, M))
    sq = data.modulus_squared()
    w = sq.combined(mode) - model.modulus_squared().combined(mode)
    return A, w, model


def _model_vector(model: FarField, mode: ModeFlags, phaseless: bool):
    if phaseless:
        model = model.modulus_squared()
    return model.combined(mode)


def full_jacobian(curve: StarCurve, medium: ElasticMedium, wave: IncidentWave, mode: ModeFlags, n: int,
                  n_bar: int, base, ball=None, phaseless=False, step=1e-6):
    """Forward-difference derivative of the complete forward map, densities re-solved.

    Not the operator derivative used by the default iteration: here the
    densities follow the boundary.  ``base`` is the model vector at ``curve``.
    """
    M = curve.M
    cols = []
    for j in range(2 * M + 3):
        xi = np.zeros(2 * M + 3)
        xi[j] = step
        pert = apply_update(curve, ShapeUpdate.from_vector(xi, M), 1.0)
        curves = (pert,) if ball is None else (pert, ball)
        ff = forward.far_field(forward.solve(curves, medium, wave, n), medium, n_bar)
        cols.append((_model_vector(ff, mode, phaseless) - base) / step)
    J = np.column_stack(cols)
    return J.real if phaseless else J


# -- regularized update -------------------------------------------------------

def penalty_weights(M: int, kind: str = "h2") -> np.ndarray:
    """Diagonal of the H2 penalty ``diag(1, 1, 2pi, pi(1+m^2)^2 ..., pi(1+m^2)^2 ...)``."""
    if kind == "identity":
        return np.ones(2 * M + 3)
    m = np.arange(1, M + 1)
    hm = math.pi * (1.0 + m**2) ** 2
    return np.concatenate([[1.0, 1.0, 2 * math.pi], hm, hm])


def tikhonov_update(B, w, lam: float, M: int, penalty: str = "h2") -> ShapeUpdate:
    """Solve ``(lam I~ + Re(B^H B)) xi = Re(B^H w)``."""
    if not lam > 0:
        raise ValueError("regularization parameter must be positive")
    B = np.asarray(B)
    w = np.asarray(w)
    lhs = lam * np.diag(penalty_weights(M, penalty)) + np.real(B.conj().T @ B)
    rhs = np.real(B.conj().T @ w)
    xi = np.linalg.solve(lhs, rhs)
    return ShapeUpdate.from_vector(xi, M)


def tikhonov_functional(B, w, xi, lam, M, penalty="h2") -> float:
    xi = np.asarray(xi, dtype=float)
    return float(np.sum(np.abs(B @ xi - w) ** 2) + lam * xi @ (penalty_weights(M, penalty) * xi))


# -- algorithms ---------------------------------------------------------------

def _step(curve, update, rho, ball, medium):
    """Apply a scaled update, halving ``rho`` once if it is rejected."""
    for scale in (rho, 0.5 * rho):
        try:
            new = apply_update(curve, update, scale)
            if ball is not None:
                forward.check_separation(new, ball, medium)
            return new, None
        except NonpositiveRadiusError as exc:
            reason = ("rejected-step", str(exc))
        except OverlappingBoundariesError as exc:
            reason = ("ball-curve-collision", str(exc))
        logger.info("step with rho=%.3g rejected: %s", scale, reason[1])
    return None, (reason[0], f"update rejected at rho={rho:g} and rho={0.5 * rho:g}: {reason[1]}")


def _run(config, medium, wave, data, initial, exact, phaseless):
    M = config.M
    if initial.M != M:
        raise ValueError(f"initial curve has M={initial.M}, config has M={M}")
    ball = config.reference_ball
    if phaseless and ball is None:
        raise ValueError("phaseless reconstruction requires a reference ball: phaseless far fields are "
                         "invariant under translations of the obstacle")
    jac = phaseless_jacobian if phaseless else phased_jacobian
    err_fn = stopping_error_phaseless if phaseless else stopping_error_phased
    curves_of = (lambda c: (c, ball)) if ball is not None else (lambda c: (c,))
    if ball is not None:
        forward.check_separation(initial, ball, medium)

    trace = IterationTrace()
    curve = initial
    lam_in = float("nan")
    k = 0
    while True:
        try:
            dens = forward.solve(curves_of(curve), medium, wave, config.n)
        except SingularSystemError as exc:
            trace.status, trace.message = "singular-system", str(exc)
            return trace
        B, w, model = jac(curve, dens, medium, config.mode, data, M)
        if config.linearization == "full":
            B = full_jacobian(curve, medium, wave, config.mode, config.n, data.n_bar,
                              _model_vector(model, config.mode, phaseless), ball, phaseless, config.fd_step)
        E = err_fn(data, model, config.mode)
        Err = curve_l2_error(curve, exact) if exact is not None else float("nan")
        residual_norm = l2_norm(w)
        if k == 0:
            lam_in = lambda_schedule(residual_norm)
        trace.records.append(IterationRecord(k, curve, E, Err, lam_in))
        logger.debug("k=%d E=%.4g Err=%.4g lam=%.4g", k, E, Err, lam_in)
        if E < config.epsilon:
            trace.status = "converged"
            return trace
        if k >= config.max_iters:
            trace.status = "max-iters"
            trace.message = f"E={E:.4g} still above epsilon={config.epsilon} after {k} iterations"
            return trace
        lam_in = lambda_schedule(residual_norm)
        update = tikhonov_update(B, w, lam_in, M, config.penalty)
        new, reason = _step(curve, update, config.rho, ball, medium)
        if new is None:
            trace.status, trace.message = reason
            return trace
        curve = new
        k += 1


def run_algorithm_I(config: ReconstructionConfig, medium: ElasticMedium, wave: IncidentWave,
                    data: FarField, initial: StarCurve, exact: RadialCurve | None = None) -> IterationTrace:
    """Regularized Newton iteration for phased far-field data.

    With ``config.reference_ball`` set, the forward model includes the ball
    (phased data with a reference ball).
    """
    if data.phaseless:
        raise ValueError("run_algorithm_I needs phased data")
    return _run(config, medium, wave, data, initial, exact, phaseless=False)


def run_algorithm_II(config: ReconstructionConfig, medium: ElasticMedium, wave: IncidentWave,
                     data: FarField, initial: StarCurve, exact: RadialCurve | None = None) -> IterationTrace:
    """Regularized Newton iteration for phaseless data with a reference ball."""
    return _run(config, medium, wave, data.modulus_squared(), initial, exact, phaseless=True)


def synthesize_data(shape: RadialCurve, medium: ElasticMedium, wave: IncidentWave, n_data: int, n_bar: int,
                    reference_ball: CircleBoundary | None = None, delta: float = 0.0, seed: int = 0,
                    phaseless: bool = False) -> FarField:
    """Far-field data of ``shape`` (plus the ball) on a refined grid, optionally noisy."""
    curves = (shape,) if reference_ball is None else (shape, reference_ball)
    dens = forward.solve(curves, medium, wave, n_data)
    ff = forward.far_field(dens, medium, n_bar)
    if phaseless:
        ff = ff.modulus_squared()
    return inject_noise(ff, delta, seed)
