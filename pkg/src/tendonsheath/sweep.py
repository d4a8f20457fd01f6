"""Design-space sweeps and slack-free design search."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product

import numpy as np

from ._validation import check_finite, check_positive, check_theta_grid
from .exceptions import (
    DomainError,
    InfeasibleBracketError,
    InfeasibleRangeError,
    TendonSheathError,
)
from .solver import SystemConfig, default_grid, simulate_trajectory, slack_metric

SLACK_TOL = 1e-9

# Axis name -> result column name, in sweep order.
AXES = {
    "F_pre": "pretension_n",
    "K_SE": "k_se_n_per_m",
    "eta": "eta",
    "mass_ext": "mass_ext_kg",
}


def with_params(base, F_pre=None, K_SE=None, eta=None, mass_ext=None):
    """Copy of ``base`` with the given design parameters replaced.

    ``K_SE`` sets both series springs.
    """
    tendon, drive, load = base.tendon, base.drive, base.load
    if F_pre is not None:
        tendon = replace(tendon, F_pre=F_pre)
    if K_SE is not None:
        drive = replace(drive, K_SE_f=K_SE, K_SE_e=K_SE)
    if eta is not None:
        drive = replace(drive, eta=eta)
    if mass_ext is not None:
        load = replace(load, mass_ext=mass_ext)
    return replace(base, tendon=tendon, drive=drive, load=load)


@dataclass(frozen=True)
class SweepSpec:
    """Cartesian design grid around a base configuration.

    Attributes:
        base: SystemConfig supplying every parameter not swept.
        theta_grid: Ascending elbow angles, radians.
        F_pre: Pretension values, N.
        K_SE: Series-spring stiffness values (both sides), N/m.
        eta: Spool radius ratios.
        mass_ext: External masses, kg.
    """

    base: SystemConfig
    theta_grid: tuple
    F_pre: tuple = ()
    K_SE: tuple = ()
    eta: tuple = ()
    mass_ext: tuple = ()

    def __post_init__(self):
        if not isinstance(self.base, SystemConfig):
            raise DomainError("base must be a SystemConfig")
        grid = check_theta_grid(self.theta_grid)
        if grid.size == 0:
            raise DomainError("theta_grid must be nonempty")
        object.__setattr__(self, "theta_grid", tuple(float(t) for t in grid))
        for name in AXES:
            values = tuple(float(v) for v in getattr(self, name))
            object.__setattr__(self, name, values)
            for v in values:
                with_params(self.base, **{name: v})
        if not any(getattr(self, name) for name in AXES):
            raise DomainError("at least one sweep axis must be nonempty")

    @property
    def axes(self):
        """Nonempty axes as ``[(name, values), ...]`` in sweep order."""
        return [(name, getattr(self, name)) for name in AXES if getattr(self, name)]

    def points(self):
        """Parameter dicts of the full product, lexicographic in axis order."""
        axes = self.axes
        names = [name for name, _ in axes]
        return [dict(zip(names, combo)) for combo in product(*(v for _, v in axes))]


@dataclass(frozen=True)
class DesignResult:
    """Slack summary of one design.

    Attributes:
        params: ``((column, value), ...)`` of the swept parameters.
        max_slack: Largest slack over the grid, m (NaN if the solve failed).
        integral_slack: Slack integrated over theta, m*rad.
        peak_tau_m: Largest motor torque magnitude, N*m.
        feasible: True when ``max_slack <= slack tolerance``.
        error: Failure message, or None.
        trajectory: Solved points (empty when the solve failed).
    """

    params: tuple
    max_slack: float
    integral_slack: float
    peak_tau_m: float
    feasible: bool
    error: str = None
    trajectory: tuple = field(default=(), repr=False, compare=False)


def evaluate_design(config, theta_grid, params=(), slack_tol=SLACK_TOL, keep_trajectory=True):
    """Simulate one design and summarise its slack.

    Solver failures are captured in the result instead of raised.
    """
    try:
        traj = simulate_trajectory(config, theta_grid)
    except TendonSheathError as exc:
        nan = math.nan
        return DesignResult(tuple(params), nan, nan, nan, False, f"{type(exc).__name__}: {exc}")
    max_slack, integral = slack_metric(traj)
    peak = max(abs(p.tau_m) for p in traj)
    return DesignResult(
        params=tuple(params),
        max_slack=max_slack,
        integral_slack=integral,
        peak_tau_m=peak,
        feasible=max_slack <= slack_tol,
        trajectory=tuple(traj) if keep_trajectory else (),
    )


def run_sweep(spec, n_jobs=None, slack_tol=SLACK_TOL, keep_trajectories=True):
    """Evaluate every design of a SweepSpec.

    Args:
        spec: SweepSpec.
        n_jobs: Worker threads; results are identical for any value.
        slack_tol: Feasibility tolerance on slack, m.
        keep_trajectories: Store solved points in each result.

    Returns:
        List of DesignResult, lexicographic in (F_pre, K_SE, eta, mass_ext).
    """
    points = spec.points()

    def work(p):
        params = tuple((AXES[name], value) for name, value in p.items())
        return evaluate_design(
            with_params(spec.base, **p), spec.theta_grid, params, slack_tol, keep_trajectories
        )

    if n_jobs is None or n_jobs == 1:
        return [work(p) for p in points]
    if n_jobs < 1:
        raise DomainError(f"n_jobs must be >= 1, got {n_jobs!r}")
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(work, points))


def _grid(theta_grid):
    return default_grid() if theta_grid is None else theta_grid


def is_feasible(config, theta_grid=None, slack_tol=SLACK_TOL):
    """True when the design solves without error and never goes slack."""
    return evaluate_design(config, _grid(theta_grid), slack_tol=slack_tol, keep_trajectory=False).feasible


def _pretension_feasible(base, F_pre, grid, slack_tol):
    # Zero or negative pretension is not a valid installation.
    if F_pre <= 0.0:
        return False
    return is_feasible(with_params(base, F_pre=F_pre), grid, slack_tol)


def scan_min_pretension(base, bracket, step, theta_grid=None, slack_tol=SLACK_TOL):
    """Smallest feasible pretension on the grid ``low, low+step, ...<= high``.

    Returns:
        The pretension, or None if no grid value is feasible.
    """
    low, high = bracket
    grid = _grid(theta_grid)
    n = int(math.floor((high - low) / step + 1e-9))
    for k in range(n + 1):
        F = low + k * step
        if _pretension_feasible(base, F, grid, slack_tol):
            return F
    return None


def find_min_pretension(base, bracket, tol=1.0, theta_grid=None, slack_tol=SLACK_TOL):
    """Smallest slack-free pretension by bisection.

    Args:
        base: SystemConfig; its pretension is ignored.
        bracket: ``(low, high)`` pretension bounds, N.
        tol: Bisection resolution, N.
        theta_grid: Angles to check; defaults to 181 points on [0, pi/2].
        slack_tol: Feasibility tolerance on slack, m.

    Returns:
        ``F*`` such that ``F*`` is feasible and ``F* - tol`` is not (or
        ``low`` itself when already feasible).

    Raises:
        InfeasibleBracketError: if ``high`` still leaves slack.
    """
    low, high = (check_finite(b, "bracket") for b in bracket)
    tol = check_positive(tol, "tol")
    if not low < high:
        raise DomainError(f"bracket must satisfy low < high, got {bracket!r}")
    grid = _grid(theta_grid)
    if _pretension_feasible(base, low, grid, slack_tol):
        return low
    if not _pretension_feasible(base, high, grid, slack_tol):
        raise InfeasibleBracketError(f"slack persists at the bracket high end {high!r} N")
    lo, hi = low, high
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _pretension_feasible(base, mid, grid, slack_tol):
            hi = mid
        else:
            lo = mid
    if _pretension_feasible(base, hi - tol, grid, slack_tol):
        # Feasibility is not monotone here; fall back to an exhaustive scan.
        return scan_min_pretension(base, (low, high), tol, grid, slack_tol)
    return hi


def eta_candidates(eta_range, step):
    """Radius ratios ``high, high-step, ...`` strictly above ``low``."""
    low, high = (check_finite(b, "eta_range") for b in eta_range)
    step = check_finite(step, "step")
    if not 0.0 < step < 1.0:
        raise DomainError(f"step must lie in (0, 1), got {step!r}")
    if not (0.0 <= low < high):
        raise DomainError(f"eta_range must satisfy 0 <= low < high, got {eta_range!r}")
    n = int(math.floor((high - low) / step + 1e-9))
    values = [float(np.round(high - k * step, 12)) for k in range(n + 1)]
    return [v for v in values if v > low]


def find_noslack_ratio(base, eta_range=(0.5, 1.0), step=0.05, theta_grid=None, slack_tol=SLACK_TOL):
    """Largest slack-free spool radius ratio in ``(low, high]``.

    Candidates are scanned downward from ``high`` in steps of ``step``; the
    largest ratio is preferred because smaller ratios demand more antagonist
    travel.

    Raises:
        InfeasibleRangeError: if no candidate is slack-free.
    """
    grid = _grid(theta_grid)
    for eta in eta_candidates(eta_range, step):
        if is_feasible(with_params(base, eta=eta), grid, slack_tol):
            return eta
    raise InfeasibleRangeError(f"no slack-free radius ratio in {tuple(eta_range)!r}")
