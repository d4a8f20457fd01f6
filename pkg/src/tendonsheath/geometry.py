"""Planar arm-routing kinematics and sheath bend-angle integration.

Frame: elbow joint centre at the origin, upper arm hanging along -y, forearm
rotating by the elbow angle ``theta`` (0 = fully extended). The flexor tendon
runs straight between the forearm anchor ``q`` and the upper-arm anchor ``r``;
the extensor tendon wraps a virtual pulley of radius ``R_elb`` at the joint.

All functions accept a scalar angle or an array of angles and return the same
shape (a Python float for scalar input).
"""

import math
from dataclasses import dataclass, fields

import numpy as np

from ._validation import check_finite, check_nonnegative
from .exceptions import DegenerateGeometryError, DomainError

# Offset used by the small-angle evaluation of the no-slack ratio.
SMALL_ANGLE = 1e-4


@dataclass(frozen=True)
class ArmGeometry:
    """Anchor offsets and elbow pulley radius, all in metres.

    Attributes:
        a1: Horizontal offset of the upper-arm anchor ``r``.
        b1: Vertical offset of the upper-arm anchor ``r``.
        a2: Perpendicular offset of the forearm anchor ``q``.
        b2: Distance of the forearm anchor along the forearm.
        R_elb: Radius of the virtual elbow pulley.
    """

    a1: float
    b1: float
    a2: float
    b2: float
    R_elb: float

    def __post_init__(self):
        for f in fields(self):
            value = check_finite(getattr(self, f.name), f.name)
            if value <= 0.0:
                raise DomainError(f"{f.name} must be > 0, got {value!r}")
            object.__setattr__(self, f.name, value)
        if not (self.R_elb < self.b1 and self.R_elb < self.b2):
            raise DomainError("R_elb must be smaller than both b1 and b2")

    @classmethod
    def unchecked(cls, a1, b1, a2, b2, R_elb):
        """Build a geometry without the positivity invariants.

        Used for degenerate analyses (collinear anchors, zero pulley) that the
        validated constructor rejects. Values must still be finite and >= 0.
        """
        obj = object.__new__(cls)
        for name, value in zip(("a1", "b1", "a2", "b2", "R_elb"), (a1, b1, a2, b2, R_elb)):
            object.__setattr__(obj, name, check_nonnegative(value, name))
        return obj

    def anchor_points(self, theta):
        """Return the points ``p, q, r, s`` at elbow angle ``theta``.

        Args:
            theta: Elbow angle in radians (scalar).

        Returns:
            Tuple of four length-2 arrays.
        """
        st, ct = math.sin(theta), math.cos(theta)
        p = np.array([self.b2 * st, -self.b2 * ct])
        q = np.array([self.b2 * st + self.a2 * ct, -self.b2 * ct + self.a2 * st])
        r = np.array([self.a1, self.b1])
        s = np.array([0.0, self.b1])
        return p, q, r, s


def _angles(theta, low=0.0, high=math.pi, open_low=False):
    arr = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("theta must be finite")
    if open_low:
        bad = np.any(arr <= low) or np.any(arr > high)
    else:
        bad = np.any(arr < low) or np.any(arr > high)
    if bad:
        bracket = "(" if open_low else "["
        raise DomainError(f"theta must lie in {bracket}{low}, {high}], got {theta!r}")
    return arr


def _out(arr, theta):
    return float(arr) if np.ndim(theta) == 0 else arr


def _q_xy(geom, t):
    st, ct = np.sin(t), np.cos(t)
    return geom.b2 * st + geom.a2 * ct, -geom.b2 * ct + geom.a2 * st


def chord_length(geom, theta):
    """Straight-line distance between the flexor anchors ``q`` and ``r``.

    Args:
        geom: ArmGeometry.
        theta: Elbow angle(s) in [0, pi].

    Returns:
        Chord length in metres.
    """
    t = _angles(theta)
    qx, qy = _q_xy(geom, t)
    return _out(np.hypot(qx - geom.a1, qy - geom.b1), theta)


def extension_functions(geom, theta):
    """Wrapped flexor length and unwrapped extensor length.

    Args:
        geom: ArmGeometry.
        theta: Elbow angle(s) in [0, pi].

    Returns:
        ``(H_f, H_e)`` in metres, with ``H_f = (b1 + b2) - L_c`` and
        ``H_e = R_elb * theta``.
    """
    t = _angles(theta)
    qx, qy = _q_xy(geom, t)
    h_f = (geom.b1 + geom.b2) - np.hypot(qx - geom.a1, qy - geom.b1)
    h_e = geom.R_elb * t
    return _out(h_f, theta), _out(h_e, theta)


def noslack_radius_ratio(geom, theta):
    """Spool radius ratio that keeps both tendons taut at angle ``theta``.

    Args:
        geom: ArmGeometry.
        theta: Elbow angle(s) in (0, pi]. The expression is 0/0 at zero; use
            ``noslack_radius_ratio_limit`` there.

    Returns:
        ``H_f(theta) / (R_elb * theta)``.
    """
    t = _angles(theta, open_low=True)
    if geom.R_elb == 0.0:
        raise DomainError("R_elb must be > 0 for a radius ratio")
    h_f, _ = extension_functions(geom, t)
    return _out(h_f / (geom.R_elb * t), theta)


def noslack_radius_ratio_limit(geom, theta0=SMALL_ANGLE):
    """Small-angle stand-in for the no-slack ratio.

    Evaluates ``dH_f/dtheta / R_elb`` by a central difference at ``theta0``
    (step ``theta0``), which is the local rate form of the ratio and stays
    finite where the quotient form is 0/0.
    """
    theta0 = check_finite(theta0, "theta0")
    if theta0 <= 0.0 or 2.0 * theta0 > math.pi:
        raise DomainError("theta0 must lie in (0, pi/2]")
    if geom.R_elb == 0.0:
        raise DomainError("R_elb must be > 0 for a radius ratio")
    h_hi, _ = extension_functions(geom, 2.0 * theta0)
    h_lo, _ = extension_functions(geom, 0.0)
    return (h_hi - h_lo) / (2.0 * theta0) / geom.R_elb


def point_line_distance(point, a, b):
    """Distance from ``point`` to the infinite line through ``a`` and ``b`` (2-D)."""
    point, a, b = (np.asarray(v, dtype=float) for v in (point, a, b))
    d = b - a
    norm = math.hypot(d[0], d[1])
    if norm == 0.0:
        raise DegenerateGeometryError("line endpoints coincide")
    w = a - point
    return abs(d[0] * w[1] - d[1] * w[0]) / norm


def moment_arm_flexor(geom, theta):
    """Perpendicular distance from the joint centre to the chord ``q``-``r``.

    Args:
        geom: ArmGeometry.
        theta: Elbow angle(s) in [0, pi].

    Returns:
        Flexor moment arm in metres.

    Raises:
        DegenerateGeometryError: if ``q`` and ``r`` coincide.
    """
    t = _angles(theta)
    qx, qy = _q_xy(geom, t)
    dx, dy = geom.a1 - qx, geom.b1 - qy
    norm = np.hypot(dx, dy)
    if np.any(norm == 0.0):
        raise DegenerateGeometryError("flexor anchors q and r coincide")
    # |q x r| / |r - q|
    return _out(np.abs(qx * geom.b1 - qy * geom.a1) / norm, theta)


def moment_arm_extensor(geom, theta):
    """Extensor moment arm: the pulley radius, independent of angle."""
    t = _angles(theta)
    return _out(np.full_like(t, geom.R_elb), theta)


@dataclass(frozen=True)
class RoutedPath:
    """Polyline route of a sheath in 3-D.

    Attributes:
        points: ``(n, 3)`` array of positions in metres, ``n >= 2``. 2-D input
            is padded with ``z = 0``.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] not in (2, 3):
            raise DomainError("points must be an (n, 2) or (n, 3) array with n >= 2")
        if pts.shape[1] == 2:
            pts = np.column_stack([pts, np.zeros(len(pts))])
        if not np.all(np.isfinite(pts)):
            raise DomainError("points must be finite")
        seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        if np.any(seg == 0.0):
            idx = int(np.flatnonzero(seg == 0.0)[0])
            raise DegenerateGeometryError(f"repeated consecutive points at index {idx}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def length(self):
        """Total polyline length in metres."""
        return float(np.linalg.norm(np.diff(self.points, axis=0), axis=1).sum())


def turning_angles(path):
    """Turning angle at each interior vertex of ``path`` (radians, in [0, pi])."""
    d = np.diff(path.points, axis=0)
    u, v = d[:-1], d[1:]
    cross = np.linalg.norm(np.cross(u, v), axis=1)
    dot = np.einsum("ij,ij->i", u, v)
    return np.arctan2(cross, dot)


def bend_angle(path):
    """Total turning angle of a routed sheath.

    Args:
        path: RoutedPath, or anything its constructor accepts.

    Returns:
        Sum of the turning angles at interior vertices, which converges to the
        curvature integral for finely sampled smooth routes.
    """
    if not isinstance(path, RoutedPath):
        path = RoutedPath(path)
    return float(turning_angles(path).sum())
