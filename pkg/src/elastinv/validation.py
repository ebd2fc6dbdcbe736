"""Input checks shared by the estimators, the config loader and the CLI."""
from __future__ import annotations

import math
from numbers import Integral, Real

import numpy as np

from .forward import FarField
from .geometry import CircleBoundary, StarCurve


def check_positive(value, name, integer=False, strict=True):
    kind = Integral if integer else Real
    if isinstance(value, bool) or not isinstance(value, kind):
        raise TypeError(f"{name} must be {'an integer' if integer else 'a real number'}, got {value!r}")
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite")
    if (value <= 0) if strict else (value < 0):
        raise ValueError(f"{name} must be {'positive' if strict else 'nonnegative'}, got {value}")
    return int(value) if integer else float(value)


def check_in_range(value, name, low, high, closed_low=False, closed_high=True):
    value = check_positive(value, name, strict=False) if low >= 0 else float(value)
    lo_ok = value >= low if closed_low else value > low
    hi_ok = value <= high if closed_high else value < high
    if not (lo_ok and hi_ok):
        lb, rb = "[" if closed_low else "(", "]" if closed_high else ")"
        raise ValueError(f"{name} must lie in {lb}{low}, {high}{rb}, got {value}")
    return value


def check_point(value, name="point"):
    arr = np.asarray(value, dtype=float)
    if arr.shape != (2,) or not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be a finite pair of coordinates")
    return arr


def check_far_field(X, phaseless=None, n_bar=None) -> FarField:
    """Accept a FarField or an array of rows ``(angle, ...)`` and return a FarField.

    Array rows are ``(angle, Re phi, Im phi, Re psi, Im psi)`` for phased data
    and ``(angle, |phi|^2, |psi|^2)`` for phaseless data.
    """
    if not isinstance(X, FarField):
        arr = np.asarray(X, dtype=float)
        if arr.ndim != 2 or arr.shape[1] not in (3, 5):
            raise ValueError("far-field array must have 3 (phaseless) or 5 (phased) columns")
        if arr.shape[1] == 5:
            X = FarField(arr[:, 0], arr[:, 1] + 1j * arr[:, 2], arr[:, 3] + 1j * arr[:, 4])
        else:
            X = FarField(arr[:, 0], arr[:, 1], arr[:, 2], phaseless=True)
    N = X.directions.size
    if N % 2 or N == 0:
        raise ValueError(f"expected an even, nonzero number of directions, got {N}")
    expected = 2 * math.pi * np.arange(N) / N
    if not np.allclose(X.directions, expected, atol=1e-12):
        raise ValueError("directions must be the uniform grid 2 pi i / N")
    for name, v in (("phi", X.phi), ("psi", X.psi)):
        if np.asarray(v).shape != (N,) or not np.all(np.isfinite(v)):
            raise ValueError(f"{name} samples must be finite with one value per direction")
    if phaseless is not None and X.phaseless != phaseless:
        raise ValueError("expected phaseless data" if phaseless else "expected phased data")
    if n_bar is not None and N != 2 * n_bar:
        raise ValueError(f"expected {2 * n_bar} directions, got {N}")
    return X


def check_star_curve(curve, M=None) -> StarCurve:
    if not isinstance(curve, StarCurve):
        raise TypeError(f"expected a StarCurve, got {type(curve).__name__}")
    if M is not None and curve.M != M:
        raise ValueError(f"curve has truncation {curve.M}, expected {M}")
    return curve


def check_ball(ball):
    if ball is None or isinstance(ball, CircleBoundary):
        return ball
    if isinstance(ball, dict):
        return CircleBoundary.from_dict(ball)
    center, radius = ball
    return CircleBoundary(check_point(center, "ball center"), check_positive(radius, "ball radius"))
