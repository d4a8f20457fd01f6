"""Quasi-static load model: elbow torque demanded by an external mass."""

import math
from dataclasses import dataclass

from ._validation import check_angle, check_finite, check_nonnegative
from .exceptions import DomainError

FLEXION = "flexion"
EXTENSION = "extension"
PHASES = (FLEXION, EXTENSION)

# Sanity bound on lever lengths, m.
MAX_LEVER = 0.5


@dataclass(frozen=True)
class LoadCase:
    """External load and forearm statics.

    Attributes:
        mass_ext: Mass held in the hand, kg.
        l_hand: Elbow-to-load lever, m.
        mass_forearm: Forearm mass, kg.
        l_com: Elbow-to-forearm-centre-of-mass lever, m.
        g: Gravitational acceleration, m/s^2.
    """

    mass_ext: float
    l_hand: float = 0.30
    mass_forearm: float = 1.5
    l_com: float = 0.15
    g: float = 9.81

    def __post_init__(self):
        for name in ("mass_ext", "l_hand", "mass_forearm", "l_com", "g"):
            object.__setattr__(self, name, check_nonnegative(getattr(self, name), name))
        for name in ("l_hand", "l_com"):
            if getattr(self, name) > MAX_LEVER:
                raise DomainError(f"{name} must be <= {MAX_LEVER} m")

    @property
    def peak_torque(self):
        """Torque at a horizontal forearm, N*m."""
        return (self.mass_ext * self.l_hand + self.mass_forearm * self.l_com) * self.g


def load_torque(case, theta):
    """Gravity torque about the elbow with the upper arm vertical.

    Args:
        case: LoadCase.
        theta: Elbow angle in [0, pi].

    Returns:
        ``(mass_ext*l_hand + mass_forearm*l_com) * g * sin(theta)``, N*m.
    """
    theta = check_angle(theta)
    return case.peak_torque * math.sin(theta)


def required_distal_tensions(tau_a, J_f, J_e, phase):
    """Distal tensions carrying ``tau_a`` with the antagonist unloaded.

    Args:
        tau_a: Elbow torque, N*m.
        J_f: Flexor moment arm, m.
        J_e: Extensor moment arm, m.
        phase: ``"flexion"`` or ``"extension"``.

    Returns:
        ``(F_O_f, F_O_e)``: ``(tau_a/J_f, 0)`` in flexion and
        ``(0, tau_a/J_e)`` in extension.
    """
    tau_a = check_finite(tau_a, "tau_a")
    if phase == FLEXION:
        arm = check_finite(J_f, "J_f")
    elif phase == EXTENSION:
        arm = check_finite(J_e, "J_e")
    else:
        raise DomainError(f"phase must be 'flexion' or 'extension', got {phase!r}")
    if arm <= 0.0:
        raise DomainError(f"active moment arm must be > 0, got {arm!r}")
    force = tau_a / arm
    return (force, 0.0) if phase == FLEXION else (0.0, force)
