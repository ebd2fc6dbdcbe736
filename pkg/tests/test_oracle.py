import math

import numpy as np
import pytest

from elastinv import IncidentWave
from elastinv import oracle


def test_zero_incidence(medium):
    sol = oracle.disk_modal_solve(1.0, medium, IncidentWave("P", 0.0, amplitude=0.0))
    assert not np.any(sol.a) and not np.any(sol.b)
    ff = oracle.disk_far_field(sol, medium, np.linspace(0, 6, 6))
    assert not np.any(ff.phi) and not np.any(ff.psi)


def test_reflection_parity(medium):
    # H_{-m} = (-1)^m H_m, so an even potential has a_{-m} = (-1)^m a_m
    sol = oracle.disk_modal_solve(1.0, medium, IncidentWave("P", 0.0))
    sign = (-1.0) ** np.abs(sol.orders)
    assert np.allclose(sol.a[::-1], sign * sol.a, atol=1e-15)
    assert np.allclose(sol.b[::-1], -sign * sol.b, atol=1e-15)


def test_tail_decay(medium):
    sol = oracle.disk_modal_solve(1.0, medium, IncidentWave("S", 0.3), n_modes=40)
    ref = max(np.abs(sol.a).max(), np.abs(sol.b).max())
    outer = np.abs(sol.orders) >= 30
    assert max(np.abs(sol.a[outer]).max(), np.abs(sol.b[outer]).max()) < 1e-14 * ref
    auto = oracle.disk_modal_solve(1.0, medium, IncidentWave("S", 0.3))
    assert auto.n_modes == math.ceil(medium.kappa_s) + 20


@pytest.mark.parametrize("kind", ["P", "S"])
def test_parseval(medium, kind):
    sol = oracle.disk_modal_solve(1.0, medium, IncidentWave(kind, 0.7))
    N = 512
    ff = oracle.disk_far_field(sol, medium, 2 * np.pi * np.arange(N) / N)
    energy = 2 * np.pi / N * np.sum(np.abs(ff.phi) ** 2)
    assert energy == pytest.approx(4 / medium.kappa_p * np.sum(np.abs(sol.a) ** 2), rel=1e-12)
    energy = 2 * np.pi / N * np.sum(np.abs(ff.psi) ** 2)
    assert energy == pytest.approx(4 / medium.kappa_s * np.sum(np.abs(sol.b) ** 2), rel=1e-12)


@pytest.mark.parametrize("kind", ["P", "S"])
def test_boundary_condition_holds(medium, kind):
    sol = oracle.disk_modal_solve(0.7, medium, IncidentWave(kind, 1.1))
    assert oracle.boundary_residual(sol, medium, IncidentWave(kind, 1.1)) <= 1e-10


def test_potentials_match_far_field_asymptotically(medium):
    sol = oracle.disk_modal_solve(1.0, medium, IncidentWave("P", 0.0))
    r = 2e4
    ang = np.array([0.3, 2.0])
    phi, psi = oracle.disk_potentials(sol, medium, r * np.stack([np.cos(ang), np.sin(ang)], axis=-1))
    ff = oracle.disk_far_field(sol, medium, ang)
    approx = np.exp(1j * medium.kappa_p * r) / math.sqrt(r) * ff.phi
    assert np.allclose(phi, approx, rtol=1e-3)


def test_shifted_disk(medium):
    wave = IncidentWave("S", 0.5)
    h = np.array([0.3, -0.2])
    base = oracle.disk_modal_solve(1.0, medium, wave)
    moved = oracle.disk_modal_solve(1.0, medium, wave, center=h)
    ang = np.linspace(0, 2 * np.pi, 16, endpoint=False)
    f0, f1 = oracle.disk_far_field(base, medium, ang), oracle.disk_far_field(moved, medium, ang)
    xhat = np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    inc = medium.kappa_s * (wave.d @ h)
    assert np.allclose(f1.phi, np.exp(1j * (inc - medium.kappa_p * xhat @ h)) * f0.phi, atol=1e-13)
