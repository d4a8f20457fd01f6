"""Quasi-static solution of the double tendon-sheath elbow drive.

Each tension is written as its pretension plus an increment. On each side the
proximal increment ``u`` travels to the elbow scaled by the capstan factor of
the sliding direction: the agonist is pulled through its sheath, the
antagonist is released back through its own. Two relations close the system:

* torque balance of the distal tensions about the elbow, and
* spool compatibility: spool travel of both sides equals their elastic
  stretch minus any slack.

The system is affine for a fixed set of slack sides, so it is solved exactly
and an active-set loop enforces nonnegative tensions. A side that would go
below zero is frozen where its first end unloads, and its leftover travel is
reported as slack.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields
from functools import lru_cache

import numpy as np

from ._validation import check_angle, check_choice, check_theta_grid
from .capstan import FrictionSpec, TendonSpec
from .exceptions import DomainError, NonConvergenceError, SolverError, TendonSheathError
from .geometry import ArmGeometry, extension_functions, moment_arm_extensor, moment_arm_flexor
from .loadmodel import EXTENSION, FLEXION, PHASES, LoadCase, load_torque
from .transmission import (
    CouplingCoefficients,
    DriveSpec,
    motor_torque_two_spool,
    solve_proximal_tensions,
)

MAX_SWITCHES = 4
TENSION_TOL = 1e-9
SLACK_RELEASE_TOL = 1e-12
DEFAULT_POINTS = 181

_SIDES = ("f", "e")


@dataclass(frozen=True)
class SystemConfig:
    """Complete description of one actuator design and load."""

    geom: ArmGeometry
    tendon: TendonSpec
    friction: FrictionSpec
    drive: DriveSpec
    load: LoadCase
    phase: str

    def __post_init__(self):
        check_choice(self.phase, "phase", PHASES)
        for name, kind in (
            ("geom", ArmGeometry),
            ("tendon", TendonSpec),
            ("friction", FrictionSpec),
            ("drive", DriveSpec),
            ("load", LoadCase),
        ):
            if not isinstance(getattr(self, name), kind):
                raise DomainError(f"{name} must be a {kind.__name__}")


@dataclass(frozen=True)
class OperatingPoint:
    """Solved state at one elbow angle (SI units).

    ``F_t_*`` are proximal (motor-end) tensions and ``F_O_*`` distal
    (elbow-end) tensions. Elongations are measured from the pretensioned
    reference posture. ``slack_*`` is unwound cable not taken up elastically.
    """

    theta: float
    tau_a: float
    tau_m: float
    F_t_f: float
    F_t_e: float
    F_O_f: float
    F_O_e: float
    dL_ten_f: float
    dL_ten_e: float
    dL_SE_f: float
    dL_SE_e: float
    slack_f: float
    slack_e: float

    def as_tuple(self):
        return astuple(self)


OPERATING_POINT_FIELDS = tuple(f.name for f in fields(OperatingPoint))


@dataclass(frozen=True)
class _Side:
    a: float  # distal/proximal increment ratio
    tendon: float  # tendon compliance, m/N
    spring: float  # spring compliance times a, m/N
    weight: float  # spool travel weight (eta for the flexor, 1 for the extensor)

    @property
    def c(self):
        return self.tendon + self.spring


@dataclass(frozen=True)
class _Prepared:
    sides: dict
    sign: dict
    H_f0: float
    coeffs: CouplingCoefficients


@lru_cache(maxsize=256)
def _prepare(config):
    fr, td, dr = config.friction, config.tendon, config.drive
    AE = td.axial_stiffness
    agonist = "f" if config.phase == FLEXION else "e"
    phi = {"f": fr.phi_f, "e": fr.phi_e}
    K = {"f": dr.K_SE_f, "e": dr.K_SE_e}
    weight = {"f": dr.eta, "e": 1.0}
    sides = {}
    for s in _SIDES:
        x = fr.mu * phi[s]
        if s == agonist:
            a = math.exp(-x)
            unit = 1.0 if x == 0.0 else -math.expm1(-x) / x
        else:
            a = math.exp(x)
            unit = 1.0 if x == 0.0 else math.expm1(x) / x
        spring = 0.0 if math.isinf(K[s]) else a / K[s]
        sides[s] = _Side(a=a, tendon=td.L * unit / AE, spring=spring, weight=weight[s])
    sign = {s: (1.0 if s == agonist else -1.0) for s in _SIDES}
    H_f0, _ = extension_functions(config.geom, 0.0)
    c_f, c_e = sides["f"].c, sides["e"].c
    # The effective compatibility law has the same algebraic shape as the
    # rigid-reference closed form with distal reference tensions equal to F_pre.
    coeffs = CouplingCoefficients(xi_t=c_f, xi_r=c_e, gamma_f=c_f, gamma_e=c_e)
    return _Prepared(sides=sides, sign=sign, H_f0=H_f0, coeffs=coeffs)


def spool_travel(config, theta):
    """Signed travel demands ``(h_f, h_e)`` relative to the reference posture.

    The flexor path shortens by ``H_f(theta) - H_f(0)`` and the extensor path
    lengthens by ``R_elb*theta``; both enter compatibility with the sign of
    an elongation demand.
    """
    prep = _prepare(config)
    H_f, H_e = extension_functions(config.geom, theta)
    return -(H_f - prep.H_f0), H_e


def _point(config, prep, theta, tau_a, u, slack):
    F_pre = config.tendon.F_pre
    sd = prep.sides
    F_t = {s: max(0.0, F_pre + u[s]) for s in _SIDES}
    F_O = {s: max(0.0, F_pre + sd[s].a * u[s]) for s in _SIDES}
    tau_m = motor_torque_two_spool(F_t["f"], F_t["e"], config.drive)
    return OperatingPoint(
        theta=theta,
        tau_a=tau_a,
        tau_m=tau_m,
        F_t_f=F_t["f"],
        F_t_e=F_t["e"],
        F_O_f=F_O["f"],
        F_O_e=F_O["e"],
        dL_ten_f=sd["f"].tendon * u["f"],
        dL_ten_e=sd["e"].tendon * u["e"],
        dL_SE_f=sd["f"].spring * u["f"],
        dL_SE_e=sd["e"].spring * u["e"],
        slack_f=slack["f"],
        slack_e=slack["e"],
    )


def _solve_free(config, prep, h, J, torque_rhs):
    # No slack: motor torque from the closed form plus torque balance.
    F_pre = config.tendon.F_pre
    drive, coeffs = config.drive, prep.coeffs
    sd, sg = prep.sides, prep.sign
    h_f, h_e = h
    base = solve_proximal_tensions(0.0, F_pre, F_pre, h_f, h_e, drive, coeffs)
    unit = solve_proximal_tensions(1.0, 0.0, 0.0, 0.0, 0.0, drive, coeffs)
    P = dict(zip(_SIDES, base))
    Q = dict(zip(_SIDES, unit))
    slope = sum(sg[s] * J[s] * sd[s].a * Q[s] for s in _SIDES)
    if slope == 0.0:
        raise SolverError("torque balance is insensitive to motor torque")
    offset = sum(sg[s] * J[s] * sd[s].a * (P[s] - F_pre) for s in _SIDES)
    tau_m = (torque_rhs - offset) / slope
    F_t = solve_proximal_tensions(tau_m, F_pre, F_pre, h_f, h_e, drive, coeffs)
    return {s: F_t[i] - F_pre for i, s in enumerate(_SIDES)}, {s: 0.0 for s in _SIDES}


def _solve_clamped(config, prep, h, J, torque_rhs, k, u_k):
    # Side k frozen at u_k with unknown slack; the other side carries the load.
    sd, sg = prep.sides, prep.sign
    j = "e" if k == "f" else "f"
    gain = sg[j] * J[j] * sd[j].a
    if gain == 0.0:
        raise SolverError(f"side {j!r} has no moment arm to carry the load")
    u_j = (torque_rhs - sg[k] * J[k] * sd[k].a * u_k) / gain
    travel = config.drive.eta * h[0] + h[1]
    slack_k = (sd[j].weight * sd[j].c * u_j + sd[k].weight * sd[k].c * u_k - travel) / sd[k].weight
    return {j: u_j, k: u_k}, {j: 0.0, k: slack_k}


def solve_operating_point(config, theta):
    """Solve the coupled drive at one elbow angle.

    Args:
        config: SystemConfig.
        theta: Elbow angle in [0, pi].

    Returns:
        OperatingPoint with nonnegative tensions and slack.

    Raises:
        SingularCouplingError: if the closed-form denominator vanishes.
        NonConvergenceError: if the active set switches more than four times.
        SolverError: if both cables would have to go slack.
    """
    theta = check_angle(theta)
    prep = _prepare(config)
    F_pre = config.tendon.F_pre
    sd, sg = prep.sides, prep.sign
    tau_a = load_torque(config.load, theta)
    J = {"f": moment_arm_flexor(config.geom, theta), "e": moment_arm_extensor(config.geom, theta)}
    torque_rhs = tau_a - sum(sg[s] * J[s] * F_pre for s in _SIDES)

    if theta == 0.0:
        # Fully extended: the joint stop can absorb a flexing reaction.
        direction = 1.0 if config.phase == FLEXION else -1.0
        if direction * torque_rhs >= 0.0:
            u0 = {s: 0.0 for s in _SIDES}
            return _point(config, prep, theta, tau_a, u0, u0)

    h = spool_travel(config, theta)
    u_floor = {s: -F_pre / max(1.0, sd[s].a) for s in _SIDES}
    clamped = None
    switches = 0
    while True:
        if clamped is None:
            u, slack = _solve_free(config, prep, h, J, torque_rhs)
        else:
            u, slack = _solve_clamped(config, prep, h, J, torque_rhs, clamped, u_floor[clamped])

        if clamped is not None and slack[clamped] < -SLACK_RELEASE_TOL:
            new = None
        else:
            worst = {
                s: min(F_pre + u[s], F_pre + sd[s].a * u[s])
                for s in _SIDES
                if s != clamped
            }
            worst = {s: v for s, v in worst.items() if v < -TENSION_TOL}
            if not worst:
                return _point(config, prep, theta, tau_a, u, slack)
            if clamped is not None:
                raise SolverError("both cables would go slack", theta)
            new = min(worst, key=worst.get)

        switches += 1
        if switches > MAX_SWITCHES:
            raise NonConvergenceError("active set did not settle", theta)
        clamped = new


def _solve_tagged(config, theta):
    try:
        return solve_operating_point(config, theta)
    except TendonSheathError as exc:
        if getattr(exc, "theta", None) is None:
            exc.theta = theta
        raise


def simulate_trajectory(config, theta_grid, n_jobs=None):
    """Solve every angle of an ordered grid.

    Args:
        config: SystemConfig.
        theta_grid: Ascending angles in [0, pi].
        n_jobs: Worker threads; ``None`` or 1 runs serially. Output order and
            values do not depend on this.

    Returns:
        List of OperatingPoint, one per grid angle.
    """
    grid = check_theta_grid(theta_grid)
    thetas = [float(t) for t in grid]
    if n_jobs is None or n_jobs == 1 or len(thetas) < 2:
        return [_solve_tagged(config, t) for t in thetas]
    if n_jobs < 1:
        raise DomainError(f"n_jobs must be >= 1, got {n_jobs!r}")
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(lambda t: _solve_tagged(config, t), thetas))


def default_grid(theta_max=math.pi / 2, points=DEFAULT_POINTS):
    """Evenly spaced grid on ``[0, theta_max]``."""
    theta_max = check_angle(theta_max, "theta_max")
    if int(points) != points or points < 1:
        raise DomainError(f"points must be a positive integer, got {points!r}")
    if points == 1:
        return np.array([theta_max])
    return np.linspace(0.0, theta_max, int(points))


def slack_metric(trajectory):
    """Scalar slack measures of a trajectory.

    Returns:
        ``(max_slack, integral_slack)``: the largest per-point slack of either
        side, m, and its trapezoidal integral over theta, m*rad.
    """
    if len(trajectory) == 0:
        raise DomainError("slack_metric needs a nonempty trajectory")
    worst = np.array([max(p.slack_f, p.slack_e) for p in trajectory])
    theta = np.array([p.theta for p in trajectory])
    integral = float(np.trapezoid(worst, theta)) if len(worst) > 1 else 0.0
    return float(worst.max()), integral
