"""Quasi-static modelling and design search for double tendon-sheath elbow drives."""

from .capstan import Direction, FrictionSpec, TendonSpec, alpha_factors, beta_factors, transmit
from .geometry import (
    ArmGeometry,
    RoutedPath,
    bend_angle,
    chord_length,
    extension_functions,
    moment_arm_extensor,
    moment_arm_flexor,
    noslack_radius_ratio,
    noslack_radius_ratio_limit,
)
from .loadmodel import LoadCase, load_torque, required_distal_tensions
from .solver import (
    OperatingPoint,
    SystemConfig,
    simulate_trajectory,
    slack_metric,
    solve_operating_point,
)
from .transmission import (
    CouplingCoefficients,
    DriveSpec,
    coupling_coefficients,
    motor_torque_rigid,
    motor_torque_two_spool,
    solve_proximal_tensions,
    spring_elongation,
    tendon_elongation,
)

__version__ = "0.1.0"
