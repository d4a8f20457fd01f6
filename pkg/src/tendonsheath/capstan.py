"""Capstan friction along a sheathed tendon.

A tendon sliding in a curved sheath loses (or gains) tension exponentially in
the friction coefficient times the total bend angle. The direction of sliding
decides which: pulling the tendon through the sheath attenuates the far-end
tension, letting it be drawn back (release) amplifies it.
"""

import enum
import math
from dataclasses import dataclass

from ._validation import check_finite, check_nonnegative, check_positive
from .exceptions import DomainError, NegativeForceError
from .geometry import RoutedPath, bend_angle

# Below this value of mu*phi the beta factors use their series expansion.
TAYLOR_SWITCH = 1e-6


class Direction(enum.Enum):
    """Sliding direction of the tendon relative to its sheath."""

    PULL_THROUGH = "pull-through"
    RELEASE_THROUGH = "release-through"

    @classmethod
    def coerce(cls, value):
        """Accept a Direction or its exact string value."""
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise DomainError(
                f"direction must be 'pull-through' or 'release-through', got {value!r}"
            ) from None


@dataclass(frozen=True)
class FrictionSpec:
    """Sheath friction description.

    Attributes:
        mu: Coulomb friction coefficient between tendon and sheath.
        phi_f: Total bend angle of the flexor sheath, radians.
        phi_e: Total bend angle of the extensor sheath, radians.
    """

    mu: float
    phi_f: float
    phi_e: float

    def __post_init__(self):
        for name in ("mu", "phi_f", "phi_e"):
            object.__setattr__(self, name, check_nonnegative(getattr(self, name), name))


@dataclass(frozen=True)
class TendonSpec:
    """Tendon material and installation data.

    Attributes:
        L: Sheath length, m.
        d: Tendon diameter, m.
        E: Young's modulus, Pa.
        F_pre: Pretension at the reference posture, N.
    """

    L: float
    d: float
    E: float
    F_pre: float

    def __post_init__(self):
        for name in ("L", "d", "E", "F_pre"):
            object.__setattr__(self, name, check_positive(getattr(self, name), name))

    @property
    def area(self):
        """Cross-section area, m^2."""
        return math.pi * (self.d / 2.0) ** 2

    @property
    def axial_stiffness(self):
        """Axial rigidity ``A*E`` in newtons."""
        return self.E * self.area


def transmit(F_in, mu, phi, direction):
    """Tension at the far end of a sheath segment.

    Args:
        F_in: Tension applied at the near end, N (>= 0).
        mu: Friction coefficient (>= 0).
        phi: Total bend angle, radians (>= 0).
        direction: ``Direction.PULL_THROUGH`` or ``Direction.RELEASE_THROUGH``.

    Returns:
        ``F_in * exp(-mu*phi)`` when pulling through, ``F_in * exp(mu*phi)``
        when releasing.
    """
    direction = Direction.coerce(direction)
    F_in = check_finite(F_in, "F_in")
    if F_in < 0.0:
        raise NegativeForceError(f"F_in must be >= 0, got {F_in!r}")
    mu = check_nonnegative(mu, "mu")
    phi = check_nonnegative(phi, "phi")
    sign = -1.0 if direction is Direction.PULL_THROUGH else 1.0
    return F_in * math.exp(sign * mu * phi)


def transmit_along_path(F_in, mu, path, direction):
    """``transmit`` with the bend angle measured from a routed polyline."""
    if not isinstance(path, RoutedPath):
        path = RoutedPath(path)
    return transmit(F_in, mu, bend_angle(path), direction)


def alpha_factors(spec):
    """Force ratios across the flexor and extensor sheaths.

    Returns:
        ``(alpha_t, alpha_r)`` with ``alpha_t = exp(-mu*phi_f)`` and
        ``alpha_r = exp(mu*phi_e)``.
    """
    return math.exp(-spec.mu * spec.phi_f), math.exp(spec.mu * spec.phi_e)


def beta_unit_series(x, sign):
    """Four-term series of ``(1 - exp(sign*x))/x`` about ``x = 0``.

    Args:
        x: ``mu*phi`` (>= 0).
        sign: -1 for pull-through, +1 for release-through.
    """
    if sign < 0:
        return 1.0 - x / 2.0 + x * x / 6.0 - x ** 3 / 24.0
    return -(1.0 + x / 2.0 + x * x / 6.0 + x ** 3 / 24.0)


def beta_unit_closed(x, sign):
    """Closed form ``(1 - exp(sign*x))/x`` for ``x > 0``."""
    return -math.expm1(sign * x) / x


def _beta_unit(x, sign):
    # L-normalised weighting with the series below the switch
    if x < TAYLOR_SWITCH:
        return beta_unit_series(x, sign)
    return beta_unit_closed(x, sign)


def beta_factors(spec, L):
    """Length weightings of the distributed tendon stretch.

    Args:
        spec: FrictionSpec.
        L: Sheath length, m.

    Returns:
        ``(beta_t, beta_r)`` in metres: ``L*(1 - exp(-mu*phi_f))/(mu*phi_f)``
        and ``L*(1 - exp(mu*phi_e))/(mu*phi_e)``. ``beta_r`` is negative; the
        frictionless limits are ``L`` and ``-L``.
    """
    L = check_positive(L, "L")
    beta_t = L * _beta_unit(spec.mu * spec.phi_f, -1)
    beta_r = L * _beta_unit(spec.mu * spec.phi_e, +1)
    return beta_t, beta_r


def frenet_coefficients(mu, kappa):
    """Tangential and normal weights of the element balance on a curved sheath.

    Returns:
        ``(alpha, beta)`` with ``alpha = mu/(1+mu^2)`` and
        ``beta = kappa/(1+mu^2)``.
    """
    denom = 1.0 + mu * mu
    return mu / denom, kappa / denom


def tension_gradient(F, mu, kappa):
    """Rate of change of tension along arc length, ``dF/ds``.

    Built from the element balance as ``(beta - kappa)/alpha * F``, which
    reduces to ``-mu*kappa*F`` (tension decays along the pulling direction).
    """
    if mu == 0.0:
        return 0.0 * F
    alpha, beta = frenet_coefficients(mu, kappa)
    return (beta - kappa) / alpha * F
