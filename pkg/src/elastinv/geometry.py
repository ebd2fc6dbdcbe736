"""Star-shaped boundary curves and their differential geometry.

Every curve here has the form ``p(t) = c + r(t) (cos t, sin t)``, traversed
counterclockwise, so ``n(t) = (p2'(t), -p1'(t))`` points outward and has
length ``G(t) = |p'(t)|``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidCurveError, NonpositiveRadiusError

TWO_PI = 2.0 * math.pi
CHECK_SAMPLES_PER_MODE = 16


@dataclass(frozen=True)
class CurveFrame:
    """Points and derivatives at an array of parameters ``t``.

    All vector fields have shape ``t.shape + (2,)``.
    """

    t: np.ndarray
    p: np.ndarray
    dp: np.ndarray
    ddp: np.ndarray

    @property
    def n(self):
        return np.stack([self.dp[..., 1], -self.dp[..., 0]], axis=-1)

    @property
    def n_perp(self):
        return self.dp

    @property
    def G(self):
        return np.hypot(self.dp[..., 0], self.dp[..., 1])

    @property
    def normal(self):
        return self.n / self.G[..., None]

    @property
    def tangent(self):
        return self.n_perp / self.G[..., None]


class RadialCurve:
    """Base for curves given by a center and a radial function.

    Subclasses implement :meth:`radius`, returning ``r, r', r''`` at ``t``.
    """

    center: np.ndarray

    def radius(self, t):  # pragma: no cover - abstract
        raise NotImplementedError

    def frame(self, t) -> CurveFrame:
        t = np.asarray(t, dtype=float)
        r, dr, ddr = self.radius(t)
        e = np.stack([np.cos(t), np.sin(t)], axis=-1)
        e_perp = np.stack([-np.sin(t), np.cos(t)], axis=-1)
        p = np.asarray(self.center, dtype=float) + r[..., None] * e
        dp = dr[..., None] * e + r[..., None] * e_perp
        ddp = (ddr - r)[..., None] * e + 2.0 * dr[..., None] * e_perp
        return CurveFrame(t=t, p=p, dp=dp, ddp=ddp)

    def __call__(self, t):
        """Points ``p(t)``."""
        return self.frame(t).p

    def points(self, num=256):
        t = TWO_PI * np.arange(num) / num
        return self(t)

    def min_radius(self, num=None):
        num = num or 512
        t = TWO_PI * np.arange(num) / num
        return float(np.min(self.radius(t)[0]))

    def area(self, num=512):
        t = TWO_PI * np.arange(num) / num
        r = self.radius(t)[0]
        return float(0.5 * np.mean(r**2) * TWO_PI)

    def centroid(self, num=512):
        """Area centroid of the enclosed region.

        Unlike ``center`` this does not depend on how the curve is parametrized.
        """
        t = TWO_PI * np.arange(num) / num
        r = self.radius(t)[0]
        # int r^3 e(t) dt / 3 over int r^2 dt / 2
        e = np.stack([np.cos(t), np.sin(t)], axis=-1)
        offset = (2.0 / 3.0) * np.mean(r[:, None] ** 3 * e, axis=0) / np.mean(r**2)
        return np.asarray(self.center, dtype=float) + offset


def frame_at(curve: RadialCurve, t) -> CurveFrame:
    """Analytic frame (``p, p', p'', n, n_perp, G``) of ``curve`` at ``t``."""
    return curve.frame(t)


class StarCurve(RadialCurve):
    """Star-shaped curve with a truncated trigonometric radial function.

    ``r(t) = sum_{m=0}^M alpha_m cos(mt) + sum_{m=1}^M beta_m sin(mt)``.
    """

    def __init__(self, center, alpha, beta=None, check=True):
        self.center = np.array(center, dtype=float).reshape(2)
        self.alpha = np.array(alpha, dtype=float).reshape(-1)
        M = self.alpha.size - 1
        if M < 0:
            raise InvalidCurveError("alpha must contain at least alpha_0")
        self.beta = np.zeros(M) if beta is None else np.array(beta, dtype=float).reshape(-1)
        if self.beta.size != M:
            raise InvalidCurveError(f"beta must have length M={M}, got {self.beta.size}")
        self.center.setflags(write=False)
        self.alpha.setflags(write=False)
        self.beta.setflags(write=False)
        if check:
            rmin = self.min_radius()
            if not rmin > 0:
                raise NonpositiveRadiusError(f"radial function is not positive (min r = {rmin:.3g})")

    @classmethod
    def circle(cls, center, radius, M=6):
        alpha = np.zeros(M + 1)
        alpha[0] = radius
        return cls(center, alpha, np.zeros(M))

    @property
    def M(self):
        return self.alpha.size - 1

    def min_radius(self, num=None):
        return super().min_radius(num or max(512, CHECK_SAMPLES_PER_MODE * max(self.M, 1)))

    def radius(self, t):
        t = np.asarray(t, dtype=float)
        m = np.arange(self.M + 1)
        mt = t[..., None] * m
        c, s = np.cos(mt), np.sin(mt)
        b = np.concatenate([[0.0], self.beta])
        r = c @ self.alpha + s @ b
        dr = (-s * m) @ self.alpha + (c * m) @ b
        ddr = (-c * m**2) @ self.alpha + (-s * m**2) @ b
        return r, dr, ddr

    @property
    def coefficients(self):
        """Packed vector ``(c1, c2, alpha_0..alpha_M, beta_1..beta_M)``."""
        return np.concatenate([self.center, self.alpha, self.beta])

    @classmethod
    def from_coefficients(cls, xi, M, check=True):
        xi = np.asarray(xi, dtype=float)
        return cls(xi[:2], xi[2:M + 3], xi[M + 3:2 * M + 3], check=check)

    def to_dict(self):
        return {"c1": float(self.center[0]), "c2": float(self.center[1]),
                "alpha": [float(a) for a in self.alpha], "beta": [float(b) for b in self.beta]}

    @classmethod
    def from_dict(cls, d):
        return cls((d["c1"], d["c2"]), d["alpha"], d.get("beta"))

    def __eq__(self, other):
        return (isinstance(other, StarCurve) and np.array_equal(self.coefficients, other.coefficients)
                and self.M == other.M)

    def __repr__(self):
        return f"StarCurve(center={self.center.tolist()}, M={self.M})"


class CircleBoundary(RadialCurve):
    """Circle ``b + R (cos t, sin t)``, used for the reference ball."""

    def __init__(self, center, radius):
        if not radius > 0:
            raise InvalidCurveError(f"ball radius must be positive, got {radius}")
        self.center = np.array(center, dtype=float).reshape(2)
        self.R = float(radius)

    def radius(self, t):
        t = np.asarray(t, dtype=float)
        return np.full(t.shape, self.R), np.zeros(t.shape), np.zeros(t.shape)

    def to_dict(self):
        return {"b1": float(self.center[0]), "b2": float(self.center[1]), "R": self.R}

    @classmethod
    def from_dict(cls, d):
        return cls((d["b1"], d["b2"]), d["R"])

    def __repr__(self):
        return f"CircleBoundary(center={self.center.tolist()}, R={self.R})"


class ExactShape(RadialCurve):
    """Closed-form boundary used to generate synthetic data and measure errors.

    These are deliberately not projected onto a trigonometric space.
    """

    def __init__(self, name, radial, center=(0.0, 0.0)):
        self.name = name
        self._radial = radial
        self.center = np.array(center, dtype=float).reshape(2)

    def radius(self, t):
        return self._radial(np.asarray(t, dtype=float))

    def shifted(self, h):
        return ExactShape(self.name, self._radial, self.center + np.asarray(h, dtype=float))

    def __repr__(self):
        return f"ExactShape({self.name!r}, center={self.center.tolist()})"


def _apple_radius(t):
    c, s = np.cos(t), np.sin(t)
    num = 1.0 + 0.9 * c + 0.1 * np.sin(2 * t)
    dnum = -0.9 * s + 0.2 * np.cos(2 * t)
    ddnum = -0.9 * c - 0.4 * np.sin(2 * t)
    den = 1.0 + 0.75 * c
    dden = -0.75 * s
    ddden = -0.75 * c
    q = (dnum * den - num * dden) / den**2
    r = 0.55 * num / den
    dr = 0.55 * q
    ddr = 0.55 * ((ddnum * den - num * ddden) / den**2 - 2.0 * dden * q / den)
    return r, dr, ddr


def _peanut_radius(t):
    g = 0.25 * np.cos(t) ** 2 + np.sin(t) ** 2
    dg = 0.75 * np.sin(2 * t)
    ddg = 1.5 * np.cos(2 * t)
    sg = np.sqrt(g)
    r = 0.5 * sg
    dr = 0.25 * dg / sg
    ddr = 0.25 * ddg / sg - 0.125 * dg**2 / (g * sg)
    return r, dr, ddr


_BUILTIN = {"apple": _apple_radius, "peanut": _peanut_radius}


def builtin_shape(name: str) -> ExactShape:
    """Exact apple- or peanut-shaped obstacle centered at the origin."""
    try:
        return ExactShape(name, _BUILTIN[name])
    except KeyError:
        raise ValueError(f"unknown shape {name!r}; choose from {sorted(_BUILTIN)}") from None


@dataclass(frozen=True)
class ShapeUpdate:
    """Increment ``q(s) = delta_c + delta_r(s) (cos s, sin s)``."""

    delta_c: np.ndarray
    delta_alpha: np.ndarray
    delta_beta: np.ndarray

    @classmethod
    def from_vector(cls, xi, M):
        xi = np.asarray(xi, dtype=float)
        if xi.size != 2 * M + 3:
            raise ValueError(f"update vector must have length 2M+3={2 * M + 3}, got {xi.size}")
        return cls(xi[:2].copy(), xi[2:M + 3].copy(), xi[M + 3:].copy())

    @classmethod
    def zeros(cls, M):
        return cls(np.zeros(2), np.zeros(M + 1), np.zeros(M))

    @property
    def M(self):
        return self.delta_alpha.size - 1

    def to_vector(self):
        return np.concatenate([self.delta_c, self.delta_alpha, self.delta_beta])

    def delta_r(self, s):
        s = np.asarray(s, dtype=float)
        m = np.arange(self.M + 1)
        ms = s[..., None] * m
        return np.cos(ms) @ self.delta_alpha + np.sin(ms)[..., 1:] @ self.delta_beta

    def displacement(self, s):
        """``q(s)`` with shape ``s.shape + (2,)``."""
        s = np.asarray(s, dtype=float)
        e = np.stack([np.cos(s), np.sin(s)], axis=-1)
        return self.delta_c + self.delta_r(s)[..., None] * e


def apply_update(curve: StarCurve, update: ShapeUpdate, rho: float = 1.0) -> StarCurve:
    """New curve with ``c + rho dc``, ``alpha + rho d_alpha``, ``beta + rho d_beta``.

    Raises :class:`NonpositiveRadiusError` if the updated radius is not positive.
    """
    if update.M != curve.M:
        raise ValueError(f"update has M={update.M}, curve has M={curve.M}")
    return StarCurve(curve.center + rho * update.delta_c,
                     curve.alpha + rho * update.delta_alpha,
                     curve.beta + rho * update.delta_beta)


def curve_l2_error(reconstructed: RadialCurve, exact: RadialCurve, num: int = 512) -> float:
    """Relative L2 distance of two parametrizations compared at equal parameters."""
    t = TWO_PI * np.arange(num) / num
    pk, p = reconstructed(t), exact(t)
    return float(np.sqrt(np.sum((pk - p) ** 2)) / np.sqrt(np.sum(p**2)))


def boundary_separation(a: RadialCurve, b: RadialCurve, num: int = 512) -> float:
    """Minimum sampled distance between two curves."""
    pa, pb = a.points(num), b.points(num)
    d = np.linalg.norm(pa[:, None, :] - pb[None, :, :], axis=-1)
    return float(d.min())


def contains(curve: RadialCurve, x) -> np.ndarray:
    """True where points ``x`` lie inside the star-shaped ``curve``."""
    x = np.asarray(x, dtype=float) - curve.center
    rho = np.hypot(x[..., 0], x[..., 1])
    ang = np.arctan2(x[..., 1], x[..., 0])
    return rho < curve.radius(ang)[0]
