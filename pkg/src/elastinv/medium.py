"""Elastic medium, incident plane waves and boundary data of the coupled problem."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import InvalidCurveError, InvalidMediumError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ElasticMedium:
    """Homogeneous isotropic medium with unit mass density.

    Parameters
    ----------
    lam, mu : float
        Lame constants, ``mu > 0`` and ``lam + mu > 0``.
    omega : float
        Angular frequency.
    """

    lam: float
    mu: float
    omega: float
    kappa_p: float = field(init=False)
    kappa_s: float = field(init=False)

    def __post_init__(self):
        if not (self.mu > 0):
            raise InvalidMediumError(f"mu must be positive, got {self.mu}")
        if not (self.lam + self.mu > 0):
            raise InvalidMediumError(f"lambda + mu must be positive, got {self.lam + self.mu}")
        if not (self.omega > 0):
            raise InvalidMediumError(f"omega must be positive, got {self.omega}")
        kp, ks = _wavenumbers(self.lam, self.mu, self.omega)
        object.__setattr__(self, "kappa_p", kp)
        object.__setattr__(self, "kappa_s", ks)

    def to_dict(self):
        return {"lambda": self.lam, "mu": self.mu, "omega": self.omega}


def _wavenumbers(lam, mu, omega):
    return omega / math.sqrt(lam + 2.0 * mu), omega / math.sqrt(mu)


def wavenumbers(medium: ElasticMedium) -> tuple[float, float]:
    """Compressional and shear wavenumbers ``(kappa_p, kappa_s)``."""
    return medium.kappa_p, medium.kappa_s


class WaveKind(str, Enum):
    P = "P"
    S = "S"


@dataclass(frozen=True)
class IncidentWave:
    """Plane wave ``d exp(i kp d.x)`` (kind P) or ``d_perp exp(i ks d.x)`` (kind S).

    ``amplitude`` is 1 for the physical problem; it exists so linearity can be
    exercised (a zero amplitude gives a zero incident field).
    """

    kind: WaveKind
    theta: float
    amplitude: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", WaveKind(self.kind))
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    @property
    def d(self):
        return np.array([math.cos(self.theta), math.sin(self.theta)])

    @property
    def d_perp(self):
        return np.array([-math.sin(self.theta), math.cos(self.theta)])

    @property
    def coefficients(self):
        """``(a_p_inc, a_s_inc)``: (1, 0) for P, (0, 1) for S."""
        return (1, 0) if self.kind is WaveKind.P else (0, 1)

    def polarization(self):
        return self.d if self.kind is WaveKind.P else self.d_perp

    def wavenumber(self, medium: ElasticMedium) -> float:
        return medium.kappa_p if self.kind is WaveKind.P else medium.kappa_s

    def to_dict(self):
        return {"kind": self.kind.value, "theta": self.theta}


@dataclass(frozen=True)
class ModeFlags:
    """Which potential far field drives the data equation."""

    a_p: int = 1
    a_s: int = 0

    def __post_init__(self):
        if (self.a_p, self.a_s) not in {(1, 0), (0, 1)}:
            raise ValueError(f"mode flags must be (1, 0) or (0, 1), got {(self.a_p, self.a_s)}")

    @classmethod
    def from_name(cls, name: str) -> "ModeFlags":
        name = name.lower()
        if name in ("p", "compressional"):
            return cls(1, 0)
        if name in ("s", "shear"):
            return cls(0, 1)
        raise ValueError(f"unknown mode {name!r}")

    @property
    def name(self):
        return "p" if self.a_p else "s"


def incident_field(wave: IncidentWave, medium: ElasticMedium, x) -> np.ndarray:
    """Incident displacement at points ``x`` (shape ``(..., 2)``); returns ``(..., 2)`` complex."""
    x = np.asarray(x, dtype=float)
    kappa = wave.wavenumber(medium)
    phase = np.exp(1j * kappa * (x @ wave.d)) * wave.amplitude
    return phase[..., None] * wave.polarization()


def boundary_data(wave: IncidentWave, curve, medium: ElasticMedium, nodes):
    """Right-hand sides ``w1 = 2 f1 G`` and ``w2 = 2 f2 G`` at parameter ``nodes``.

    With ``f1 = -nu.u_inc`` and ``f2 = -tau.u_inc``; since ``n = nu G`` and
    ``n_perp = tau G`` this is ``-2 n.u_inc`` and ``-2 n_perp.u_inc``.
    """
    frame = curve.frame(nodes)
    if np.any(frame.G <= 0):
        raise InvalidCurveError("degenerate curve: zero Jacobian at a node")
    u = incident_field(wave, medium, frame.p)
    w1 = -2.0 * np.sum(frame.n * u, axis=-1)
    w2 = -2.0 * np.sum(frame.n_perp * u, axis=-1)
    return w1, w2
