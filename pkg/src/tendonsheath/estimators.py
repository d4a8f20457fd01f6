"""scikit-learn style wrappers.

``TendonSheathModel`` exposes the actuator simulation as a transformer from
elbow angles to solved states, so designs can be cloned, re-parameterised
with ``set_params`` and scored like any estimator. ``FrictionCalibrator``
fits the friction coefficient from paired load-cell readings.
"""

import math

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_1d
from .calibrate import DIRECTIONS, estimate_mu
from .capstan import FrictionSpec, TendonSpec
from .exceptions import DomainError, TendonSheathError
from .geometry import ArmGeometry
from .loadmodel import LoadCase
from .results import POINT_COLUMNS
from .solver import SystemConfig, simulate_trajectory, slack_metric
from .transmission import DriveSpec


class TendonSheathModel(TransformerMixin, BaseEstimator):
    """Quasi-static double tendon-sheath elbow drive.

    Parameters are in SI units and mirror the fields of ``SystemConfig``.
    ``fit`` only validates them; ``transform`` maps elbow angles to rows of
    ``OperatingPoint`` values in ``POINT_COLUMNS`` order.
    """

    def __init__(
        self,
        a1=0.04,
        b1=0.15,
        a2=0.02,
        b2=0.15,
        R_elb=0.045,
        length=2.0,
        diameter=1.5e-3,
        youngs_modulus=1.45e11,
        pretension=100.0,
        mu=0.07,
        phi_f=math.pi,
        phi_e=math.pi,
        R_m_f=0.03,
        eta=1.0,
        K_SE_f=3000.0,
        K_SE_e=3000.0,
        mass_ext=0.0,
        l_hand=0.30,
        mass_forearm=1.5,
        l_com=0.15,
        g=9.81,
        phase="flexion",
        n_jobs=None,
    ):
        self.a1 = a1
        self.b1 = b1
        self.a2 = a2
        self.b2 = b2
        self.R_elb = R_elb
        self.length = length
        self.diameter = diameter
        self.youngs_modulus = youngs_modulus
        self.pretension = pretension
        self.mu = mu
        self.phi_f = phi_f
        self.phi_e = phi_e
        self.R_m_f = R_m_f
        self.eta = eta
        self.K_SE_f = K_SE_f
        self.K_SE_e = K_SE_e
        self.mass_ext = mass_ext
        self.l_hand = l_hand
        self.mass_forearm = mass_forearm
        self.l_com = l_com
        self.g = g
        self.phase = phase
        self.n_jobs = n_jobs

    @classmethod
    def from_config(cls, config, n_jobs=None):
        """Estimator with parameters copied from a SystemConfig."""
        g, t, f, d, ld = config.geom, config.tendon, config.friction, config.drive, config.load
        return cls(
            a1=g.a1, b1=g.b1, a2=g.a2, b2=g.b2, R_elb=g.R_elb,
            length=t.L, diameter=t.d, youngs_modulus=t.E, pretension=t.F_pre,
            mu=f.mu, phi_f=f.phi_f, phi_e=f.phi_e,
            R_m_f=d.R_m_f, eta=d.eta, K_SE_f=d.K_SE_f, K_SE_e=d.K_SE_e,
            mass_ext=ld.mass_ext, l_hand=ld.l_hand, mass_forearm=ld.mass_forearm,
            l_com=ld.l_com, g=ld.g, phase=config.phase, n_jobs=n_jobs,
        )

    def to_config(self):
        """Validated SystemConfig built from the current parameters."""
        return SystemConfig(
            geom=ArmGeometry(self.a1, self.b1, self.a2, self.b2, self.R_elb),
            tendon=TendonSpec(self.length, self.diameter, self.youngs_modulus, self.pretension),
            friction=FrictionSpec(self.mu, self.phi_f, self.phi_e),
            drive=DriveSpec(self.R_m_f, self.eta, self.K_SE_f, self.K_SE_e),
            load=LoadCase(self.mass_ext, self.l_hand, self.mass_forearm, self.l_com, self.g),
            phase=self.phase,
        )

    def fit(self, X=None, y=None):
        """Validate parameters. ``X`` and ``y`` are accepted and ignored.

        Returns:
            self
        """
        self.config_ = self.to_config()
        self.n_features_in_ = 1
        return self

    def simulate(self, X):
        """Solve at each angle of ``X``; returns a list of OperatingPoint."""
        check_is_fitted(self, "config_")
        theta = as_1d(X, "X")
        return simulate_trajectory(self.config_, theta, n_jobs=self.n_jobs)

    def transform(self, X):
        """Solved states as an ``(n, 13)`` array.

        Args:
            X: Ascending elbow angles, shape ``(n,)`` or ``(n, 1)``.
        """
        points = self.simulate(X)
        if not points:
            return np.empty((0, len(POINT_COLUMNS)))
        return np.array([p.as_tuple() for p in points], dtype=float)

    def get_feature_names_out(self, input_features=None):
        return np.array(POINT_COLUMNS, dtype=object)

    def slack(self, X):
        """``(max_slack, integral_slack)`` over the angles ``X``."""
        return slack_metric(self.simulate(X))

    def score(self, X, y=None):
        """Negative integrated slack (higher is better); ``-inf`` on failure."""
        try:
            return -self.slack(X)[1]
        except TendonSheathError:
            return -math.inf


class FrictionCalibrator(RegressorMixin, BaseEstimator):
    """Friction coefficient from paired load-cell readings.

    Args:
        theta_exp: Bend angle of the test rig in radians. Required; there is
            no sensible default.
        direction: ``"raise"`` (weight moving up) or ``"lower"``.

    Attributes:
        ratio_: Mean larger/smaller reading ratio.
        mu_: Fitted friction coefficient.
    """

    def __init__(self, theta_exp=None, direction="raise"):
        self.theta_exp = theta_exp
        self.direction = direction

    def fit(self, X, y):
        """Fit from pulled-end readings ``X`` and weight-end readings ``y``."""
        if self.theta_exp is None:
            raise DomainError("theta_exp must be given")
        if self.direction not in DIRECTIONS:
            raise DomainError(f"direction must be 'raise' or 'lower', got {self.direction!r}")
        f_in, f_out = as_1d(X, "X"), as_1d(y, "y")
        if f_in.shape != f_out.shape or f_in.size == 0:
            raise DomainError("X and y must be nonempty and of equal length")
        if np.any(f_in <= 0.0) or np.any(f_out <= 0.0):
            raise DomainError("readings must be > 0")
        ratios = f_in / f_out if self.direction == "raise" else f_out / f_in
        self.ratio_ = math.fsum(ratios) / ratios.size
        self.mu_ = estimate_mu(self.ratio_, self.theta_exp)
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        """Weight-end reading predicted from pulled-end readings."""
        check_is_fitted(self, "mu_")
        f_in = as_1d(X, "X")
        sign = -1.0 if self.direction == "raise" else 1.0
        return f_in * math.exp(sign * self.mu_ * self.theta_exp)
