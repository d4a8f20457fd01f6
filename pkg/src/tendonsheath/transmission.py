"""Spool torque relations and the series-elastic two-spool model.

This is a pure linear-algebra layer: negative intermediate tensions are
allowed here, physical nonnegativity is enforced by ``solver``.
"""

import math
from dataclasses import dataclass

from ._validation import check_finite, check_positive
from .capstan import alpha_factors, beta_factors
from .exceptions import DomainError, SingularCouplingError

FLEXOR = "flexor"
EXTENSOR = "extensor"

# Relative size below which the coupled compliance denominator is singular.
SINGULAR_RTOL = 1e-15


@dataclass(frozen=True)
class DriveSpec:
    """Motor spools and series springs.

    Attributes:
        R_m_f: Flexor spool radius, m.
        eta: Radius ratio ``R_m_e / R_m_f``.
        K_SE_f: Flexor series-spring stiffness, N/m (``math.inf`` = rigid).
        K_SE_e: Extensor series-spring stiffness, N/m (``math.inf`` = rigid).
    """

    R_m_f: float
    eta: float
    K_SE_f: float
    K_SE_e: float

    def __post_init__(self):
        object.__setattr__(self, "R_m_f", check_positive(self.R_m_f, "R_m_f"))
        object.__setattr__(self, "eta", check_positive(self.eta, "eta"))
        for name in ("K_SE_f", "K_SE_e"):
            object.__setattr__(self, name, check_positive(getattr(self, name), name, allow_inf=True))

    @classmethod
    def from_radii(cls, R_m_f, R_m_e, K_SE_f, K_SE_e):
        """Build from both spool radii instead of the ratio."""
        R_m_f = check_positive(R_m_f, "R_m_f")
        return cls(R_m_f, check_positive(R_m_e, "R_m_e") / R_m_f, K_SE_f, K_SE_e)

    @property
    def R_m_e(self):
        """Extensor spool radius, m."""
        return self.eta * self.R_m_f

    @property
    def rigid_f(self):
        return math.isinf(self.K_SE_f)

    @property
    def rigid_e(self):
        return math.isinf(self.K_SE_e)


@dataclass(frozen=True)
class CouplingCoefficients:
    """Compliances of the compatibility relation, m/N.

    Attributes:
        xi_t: Flexor proximal-tension compliance.
        xi_r: Extensor proximal-tension compliance.
        gamma_f: Flexor distal-tension compliance.
        gamma_e: Extensor distal-tension compliance.
    """

    xi_t: float
    xi_r: float
    gamma_f: float
    gamma_e: float

    def __post_init__(self):
        for name in ("xi_t", "xi_r", "gamma_f", "gamma_e"):
            object.__setattr__(self, name, check_finite(getattr(self, name), name))


def _inv(K):
    return 0.0 if math.isinf(K) else 1.0 / K


def tendon_elongation(F_I, F_O, side, beta, alpha_r, AE):
    """Distributed tendon stretch inside the sheath.

    Args:
        F_I: Proximal (motor-end) tension, N.
        F_O: Distal (elbow-end) tension, N.
        side: ``"flexor"`` or ``"extensor"``.
        beta: ``beta_t`` for the flexor, ``beta_r`` for the extensor, m.
        alpha_r: Release force ratio.
        AE: Axial rigidity, N.

    Returns:
        Flexor: ``F_I*beta/AE - F_O*beta/(alpha_r*AE)``.
        Extensor: ``-F_I*beta/AE + F_O*beta/(alpha_r*AE)``.
    """
    AE = check_positive(AE, "AE")
    value = F_I * beta / AE - F_O * beta / (alpha_r * AE)
    if side == FLEXOR:
        return value
    if side == EXTENSOR:
        return -value
    raise DomainError(f"side must be 'flexor' or 'extensor', got {side!r}")


def spring_elongation(F_I, F_O, alpha, K):
    """Series-spring stretch ``(F_I*alpha - F_O)/K``; zero for a rigid spring."""
    K = check_positive(K, "K", allow_inf=True)
    if math.isinf(K):
        return 0.0
    return F_I * alpha / K - F_O / K


def coupling_coefficients(friction, tendon, drive):
    """Compliances ``xi_t, xi_r, gamma_f, gamma_e`` of the compatibility law.

    Args:
        friction: FrictionSpec.
        tendon: TendonSpec.
        drive: DriveSpec.

    Returns:
        CouplingCoefficients.
    """
    alpha_t, alpha_r = alpha_factors(friction)
    beta_t, beta_r = beta_factors(friction, tendon.L)
    AE = tendon.axial_stiffness
    kf, ke = _inv(drive.K_SE_f), _inv(drive.K_SE_e)
    return CouplingCoefficients(
        xi_t=beta_t / AE + alpha_t * kf,
        xi_r=-beta_r / AE + alpha_r * ke,
        gamma_f=kf + beta_t / (alpha_t * AE),
        gamma_e=ke - beta_r / (alpha_r * AE),
    )


def coupled_denominator(drive, coeffs):
    """``eta^2 * xi_t + xi_r``, raising if it is numerically zero."""
    eta = drive.eta
    denom = eta * eta * coeffs.xi_t + coeffs.xi_r
    scale = eta * eta * abs(coeffs.xi_t) + abs(coeffs.xi_r)
    if scale == 0.0 or abs(denom) < SINGULAR_RTOL * scale:
        raise SingularCouplingError(
            f"coupled compliance eta^2*xi_t + xi_r = {denom!r} is singular"
        )
    return denom


def solve_proximal_tensions(tau_m, F_O_f, F_O_e, H_f, H_e, drive, coeffs):
    """Proximal tensions from motor torque, distal tensions and travel.

    Args:
        tau_m: Motor torque, N*m.
        F_O_f: Flexor distal tension, N.
        F_O_e: Extensor distal tension, N.
        H_f: Flexor travel term, m.
        H_e: Extensor travel term, m.
        drive: DriveSpec.
        coeffs: CouplingCoefficients.

    Returns:
        ``(F_t_f, F_t_e)`` in newtons.

    Raises:
        SingularCouplingError: if ``eta^2*xi_t + xi_r`` vanishes.
    """
    eta, R = drive.eta, drive.R_m_f
    denom = coupled_denominator(drive, coeffs)
    lam = F_O_e * coeffs.gamma_e + eta * F_O_f * coeffs.gamma_f
    h_ef = eta * H_f + H_e
    F_t_e = (h_ef + lam) / denom - eta * coeffs.xi_t * tau_m / (R * denom)
    F_t_f = tau_m * coeffs.xi_r / (R * denom) + eta * (h_ef + lam) / denom
    return F_t_f, F_t_e


def compatibility_residual(F_t_f, F_t_e, F_O_f, F_O_e, H_f, H_e, drive, coeffs):
    """Left minus right side of the compatibility law, m."""
    eta = drive.eta
    lhs = eta * F_t_f * coeffs.xi_t + F_t_e * coeffs.xi_r
    rhs = eta * H_f + H_e + F_O_e * coeffs.gamma_e + eta * F_O_f * coeffs.gamma_f
    return lhs - rhs


def motor_torque_two_spool(F_t_f, F_t_e, drive):
    """Motor torque of the two-spool drive ``(F_t_f - eta*F_t_e)*R_m_f``."""
    return (F_t_f - drive.eta * F_t_e) * drive.R_m_f


def motor_torque_rigid(tau_a, R_m_f, mu, phi_f, J_f):
    """Motor torque of the single-spool drive with a slack antagonist.

    Args:
        tau_a: Assistive elbow torque, N*m.
        R_m_f: Flexor spool radius, m.
        mu: Friction coefficient.
        phi_f: Flexor bend angle, radians.
        J_f: Flexor moment arm, m.

    Returns:
        ``tau_a * R_m_f * exp(mu*phi_f) / J_f``.
    """
    J_f = check_finite(J_f, "J_f")
    if J_f <= 0.0:
        raise DomainError(f"flexor moment arm must be > 0, got {J_f!r}")
    return tau_a * R_m_f * math.exp(mu * phi_f) / J_f
