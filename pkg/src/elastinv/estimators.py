"""Estimator wrappers with the familiar ``fit`` / ``predict`` / ``get_params`` surface.

``X`` is far-field data: a :class:`~elastinv.forward.FarField` or an array of
rows ``(angle, Re phi, Im phi, Re psi, Im psi)`` (phased) or
``(angle, |phi|^2, |psi|^2)`` (phaseless).
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from . import forward
from .exceptions import NotFittedError
from .geometry import StarCurve
from .inverse import (ReconstructionConfig, run_algorithm_I, run_algorithm_II, stopping_error_phased,
                      stopping_error_phaseless)
from .medium import ElasticMedium, IncidentWave, ModeFlags
from .validation import (check_ball, check_far_field, check_in_range, check_point, check_positive,
                         check_star_curve)


class FarFieldSimulator(BaseEstimator):
    """Forward map from boundary curves to potential far-field patterns."""

    def __init__(self, lam=3.88, mu=2.56, omega=0.7 * np.pi, wave_kind="S", theta=0.0, n=64, n_bar=32,
                 reference_ball=None, phaseless=False):
        self.lam = lam
        self.mu = mu
        self.omega = omega
        self.wave_kind = wave_kind
        self.theta = theta
        self.n = n
        self.n_bar = n_bar
        self.reference_ball = reference_ball
        self.phaseless = phaseless

    def fit(self, X=None, y=None):
        self.medium_ = ElasticMedium(self.lam, self.mu, self.omega)
        self.wave_ = IncidentWave(self.wave_kind, self.theta)
        self.ball_ = check_ball(self.reference_ball)
        check_positive(self.n, "n", integer=True)
        check_positive(self.n_bar, "n_bar", integer=True)
        return self

    def predict(self, X):
        """Far field of one curve, or a list of far fields for a sequence of curves."""
        if not hasattr(self, "medium_"):
            self.fit()
        if isinstance(X, (list, tuple)):
            return [self.predict(c) for c in X]
        curves = (X,) if self.ball_ is None else (X, self.ball_)
        dens = forward.solve(curves, self.medium_, self.wave_, self.n)
        ff = forward.far_field(dens, self.medium_, self.n_bar)
        return ff.modulus_squared() if self.phaseless else ff


class PhasedReconstructor(BaseEstimator):
    """Shape and location of a rigid obstacle from one phased far-field pattern.

    After ``fit``: ``curve_`` (final StarCurve), ``trace_``, ``n_iter_``,
    ``converged_`` and ``status_``.
    """

    _phaseless = False

    def __init__(self, lam=3.88, mu=2.56, omega=0.7 * np.pi, wave_kind="S", theta=0.0, mode="p", M=6, n=64,
                 rho=0.9, epsilon=0.01, max_iters=100, initial_center=(0.0, 0.0), initial_radius=0.3,
                 reference_ball=None, penalty="h2", linearization="frozen"):
        self.lam = lam
        self.mu = mu
        self.omega = omega
        self.wave_kind = wave_kind
        self.theta = theta
        self.mode = mode
        self.M = M
        self.n = n
        self.rho = rho
        self.epsilon = epsilon
        self.max_iters = max_iters
        self.initial_center = initial_center
        self.initial_radius = initial_radius
        self.reference_ball = reference_ball
        self.penalty = penalty
        self.linearization = linearization

    def _setup(self, X):
        X = check_far_field(X, phaseless=None)
        if X.phaseless and not self._phaseless:
            raise ValueError("expected phased data; use PhaselessReconstructor for squared moduli")
        medium = ElasticMedium(self.lam, self.mu, self.omega)
        wave = IncidentWave(self.wave_kind, self.theta)
        check_in_range(self.rho, "rho", 0.0, 1.0)
        cfg = ReconstructionConfig(M=check_positive(self.M, "M", integer=True), n=check_positive(self.n, "n", integer=True),
                                   n_bar=X.n_bar, rho=self.rho, epsilon=check_positive(self.epsilon, "epsilon"),
                                   max_iters=check_positive(self.max_iters, "max_iters", integer=True, strict=False),
                                   mode=ModeFlags.from_name(self.mode), reference_ball=check_ball(self.reference_ball),
                                   penalty=self.penalty, linearization=self.linearization)
        return X, medium, wave, cfg

    def _initial(self, M):
        if isinstance(self.initial_center, StarCurve):
            return check_star_curve(self.initial_center, M)
        return StarCurve.circle(check_point(self.initial_center, "initial_center"),
                                check_positive(self.initial_radius, "initial_radius"), M=M)

    def fit(self, X, y=None, exact=None):
        """Run the iteration on data ``X``; ``exact`` (a curve) enables the Err column of the trace."""
        X, medium, wave, cfg = self._setup(X)
        runner = run_algorithm_II if self._phaseless else run_algorithm_I
        trace = runner(cfg, medium, wave, X, self._initial(cfg.M), exact=exact)
        self.medium_, self.wave_, self.config_ = medium, wave, cfg
        self.trace_ = trace
        self.curve_ = trace.final_curve
        self.n_iter_ = trace.records[-1].k
        self.converged_ = trace.converged
        self.status_ = trace.status
        return self

    def _check_fitted(self):
        if not hasattr(self, "curve_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit first")

    def predict(self, X=None):
        """Model far field of the reconstructed obstacle (plus ball) at the data directions."""
        self._check_fitted()
        n_bar = self.config_.n_bar if X is None else check_far_field(X).n_bar
        ball = self.config_.reference_ball
        curves = (self.curve_,) if ball is None else (self.curve_, ball)
        ff = forward.far_field(forward.solve(curves, self.medium_, self.wave_, self.config_.n), self.medium_, n_bar)
        return ff.modulus_squared() if self._phaseless else ff

    def score(self, X, y=None):
        """``1 - E``, with ``E`` the relative data residual of the reconstruction."""
        X = check_far_field(X)
        err = stopping_error_phaseless if self._phaseless else stopping_error_phased
        return 1.0 - err(X, self.predict(X), self.config_.mode)


class PhaselessReconstructor(PhasedReconstructor):
    """Reconstruction from squared far-field moduli with a known reference ball."""

    _phaseless = True

    def __init__(self, lam=3.88, mu=2.56, omega=0.6 * np.pi, wave_kind="S", theta=0.0, mode="p", M=6, n=64,
                 rho=0.9, epsilon=0.01, max_iters=100, initial_center=(0.0, 0.0), initial_radius=0.3,
                 reference_ball=((5.0, 0.0), 0.5), penalty="h2", linearization="frozen"):
        super().__init__(lam, mu, omega, wave_kind, theta, mode, M, n, rho, epsilon, max_iters, initial_center,
                         initial_radius, reference_ball, penalty, linearization)

    def _setup(self, X):
        if self.reference_ball is None:
            raise ValueError("phaseless data need a reference ball: squared far-field moduli are invariant "
                             "under translations of the obstacle, so its location cannot be recovered")
        X, medium, wave, cfg = super()._setup(X)
        return X.modulus_squared(), medium, wave, cfg
