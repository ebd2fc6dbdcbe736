"""Self-checks of the solver stack, shared by ``elastinv validate`` and the tests.

Each check returns a :class:`CheckResult` holding the measured deviation, so
reports can be tracked over time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import forward, oracle, quadrature
from .geometry import ShapeUpdate, StarCurve, apply_update, builtin_shape
from .inverse import far_field_columns, frechet_far_field
from .medium import ElasticMedium, IncidentWave

EXAMPLE_MEDIUM = dict(lam=3.88, mu=2.56)


@dataclass
class CheckResult:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.tolerance)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name}: {self.value:.3e} (tol {self.tolerance:.0e})"


def quadrature_identities(n: int, R=None, T=None, tol=1e-12) -> list[CheckResult]:
    """Log moments, Cauchy antisymmetry and odd-sine moments of the weight tables.

    ``R`` and ``T`` default to the library tables; passing modified copies is the
    negative-control hook.
    """
    R = quadrature.log_weights(n) if R is None else np.asarray(R)
    T = quadrature.cauchy_weights(n) if T is None else np.asarray(T)
    s = quadrature.nodes(n)
    j = np.arange(2 * n)
    out = [CheckResult(f"sum R (n={n})", abs(R.sum()), tol)]
    m = np.arange(1, n)
    moments = np.cos(np.outer(m, s)) @ R
    out.append(CheckResult(f"cos moments of R (n={n})", float(np.max(np.abs(moments + 2 * math.pi / m))), tol))
    out.append(CheckResult(f"T antisymmetry (n={n})", float(np.max(np.abs(T + T[(-j) % (2 * n)]))), tol))
    k = np.arange(1, 2 * n)
    sine = np.sin(np.outer(k, s)) @ T[(-j) % (2 * n)]
    target = np.where(k % 2 == 1, 2 * math.pi, 0.0)
    # odd k up to n; beyond that the sine samples alias
    keep = k < n
    out.append(CheckResult(f"sine moments of T (n={n})", float(np.max(np.abs(sine - target)[keep])), tol))
    return out


def oracle_error(n: int, kind: str, omega=0.7 * math.pi, theta=0.3, radius=1.0) -> float:
    """Max relative far-field deviation between the Nystrom solver and the modal disk solution."""
    medium = ElasticMedium(EXAMPLE_MEDIUM["lam"], EXAMPLE_MEDIUM["mu"], omega)
    wave = IncidentWave(kind, theta)
    sol = oracle.disk_modal_solve(radius, medium, wave, (0.0, 0.0))
    ff = forward.far_field(forward.solve((StarCurve.circle((0, 0), radius),), medium, wave, n), medium, 32)
    ref = oracle.disk_far_field(sol, medium, ff.directions)
    scale = max(np.max(np.abs(ref.phi)), np.max(np.abs(ref.psi)))
    return float(max(np.max(np.abs(ff.phi - ref.phi)), np.max(np.abs(ff.psi - ref.psi))) / scale)


def frechet_fd_error(step=1e-5, directions=10, seed=0, n=64, omega=0.7 * math.pi):
    """Worst relative gap between the operator derivative and central differences (densities frozen)."""
    medium = ElasticMedium(EXAMPLE_MEDIUM["lam"], EXAMPLE_MEDIUM["mu"], omega)
    wave = IncidentWave("S", 5 * math.pi / 8)
    rng = np.random.default_rng(seed)
    curve = StarCurve((-0.2, 0.1), [0.5, 0.05, 0.03, 0, 0, 0, 0], [0.02, -0.04, 0, 0, 0, 0])
    dens = forward.solve((curve,), medium, wave, n)
    s = quadrature.nodes(n)
    angles = forward.observation_angles(32)
    worst = 0.0
    for _ in range(directions):
        upd = ShapeUpdate.from_vector(rng.standard_normal(15) * 0.1, 6)
        for kappa, phi in ((medium.kappa_p, dens.phi1[0]), (medium.kappa_s, dens.phi2[0])):
            plus = apply_update(curve, upd, step).frame(s)
            minus = apply_update(curve, upd, -step).frame(s)
            fd = (forward.far_field_operator(plus, phi, kappa, angles, n)
                  - forward.far_field_operator(minus, phi, kappa, angles, n)) / (2 * step)
            exact = frechet_far_field(curve, phi, kappa, upd, angles)
            worst = max(worst, float(np.linalg.norm(fd - exact) / np.linalg.norm(exact)))
    return worst


def translation_phase_error(h=(0.3, 0.2), shape="apple", kind="P", omega=0.7 * math.pi, theta=5 * math.pi / 8,
                            n=64, n_bar=32):
    """Deviation from the translation relations, phased and modulus, for a shifted obstacle."""
    medium = ElasticMedium(EXAMPLE_MEDIUM["lam"], EXAMPLE_MEDIUM["mu"], omega)
    wave = IncidentWave(kind, theta)
    base = builtin_shape(shape)
    moved = base.shifted(h)
    f0 = forward.far_field(forward.solve((base,), medium, wave, n), medium, n_bar)
    f1 = forward.far_field(forward.solve((moved,), medium, wave, n), medium, n_bar)
    h = np.asarray(h, dtype=float)
    xhat = np.stack([np.cos(f0.directions), np.sin(f0.directions)], axis=-1)
    kin = wave.wavenumber(medium)
    dh = kin * (wave.d @ h)
    pred_phi = np.exp(1j * (dh - medium.kappa_p * (xhat @ h))) * f0.phi
    pred_psi = np.exp(1j * (dh - medium.kappa_s * (xhat @ h))) * f0.psi
    scale = max(np.max(np.abs(f0.phi)), np.max(np.abs(f0.psi)))
    phased = max(np.max(np.abs(f1.phi - pred_phi)), np.max(np.abs(f1.psi - pred_psi))) / scale
    modulus = max(np.max(np.abs(np.abs(f1.phi) ** 2 - np.abs(f0.phi) ** 2)),
                  np.max(np.abs(np.abs(f1.psi) ** 2 - np.abs(f0.psi) ** 2))) / scale**2
    return float(phased), float(modulus)


def asymptotic_error(radius=1e3, kind="S", omega=0.7 * math.pi, theta=5 * math.pi / 8, n=64, n_bar=32):
    """Relative gap between the scattered displacement at ``|x| = radius`` and its far-field form.

    The far-field form is ``exp(i kp r)/sqrt(r) v_p + exp(i ks r)/sqrt(r) v_s`` built from
    the lifted patterns; the remainder decays like ``1/r``.
    """
    medium = ElasticMedium(EXAMPLE_MEDIUM["lam"], EXAMPLE_MEDIUM["mu"], omega)
    wave = IncidentWave(kind, theta)
    dens = forward.solve((builtin_shape("apple"),), medium, wave, n)
    lifted = forward.elastic_lift(forward.far_field(dens, medium, n_bar), medium)
    a = lifted.directions
    x = radius * np.stack([np.cos(a), np.sin(a)], axis=-1)
    vp, vs = forward.scattered_displacement(dens, medium, x)
    scale = 1.0 / math.sqrt(radius)
    approx = (np.exp(1j * medium.kappa_p * radius) * scale * lifted.vp
              + np.exp(1j * medium.kappa_s * radius) * scale * lifted.vs)
    return float(np.max(np.linalg.norm(vp + vs - approx, axis=-1)) / np.max(np.linalg.norm(approx, axis=-1)))


def jacobian_rank_gap():
    """Smallest singular value of the operator Jacobian for the circle of radius 0.3 at (-0.9, 0.4), S incidence at 5pi/8."""
    medium = ElasticMedium(EXAMPLE_MEDIUM["lam"], EXAMPLE_MEDIUM["mu"], 0.7 * math.pi)
    wave = IncidentWave("S", 5 * math.pi / 8)
    c = StarCurve.circle((-0.9, 0.4), 0.3)
    dens = forward.solve((c,), medium, wave, 64)
    B = far_field_columns(c, dens.phi1[0], medium.kappa_p, forward.observation_angles(32), 6)
    return float(np.linalg.svd(np.vstack([B.real, B.imag]), compute_uv=False)[-1])


def run_all(corrupt_weights: bool = False) -> list[CheckResult]:
    results = []
    for n in (16, 32, 64):
        R = quadrature.log_weights(n).copy()
        if corrupt_weights:
            R[1] += 1e-3
        results.extend(quadrature_identities(n, R=R))
    for kind in ("P", "S"):
        results.append(CheckResult(f"disk oracle far field, {kind} incidence, n=64", oracle_error(64, kind), 1e-8))
    results.append(CheckResult("Frechet derivative vs central differences", frechet_fd_error(), 1e-5))
    results.append(CheckResult("far-field asymptotics at |x|=1e3", asymptotic_error(), 5e-3))
    phased, modulus = translation_phase_error()
    results.append(CheckResult("translation relation, phased", phased, 1e-8))
    results.append(CheckResult("translation invariance, moduli", modulus, 1e-8))
    return results
