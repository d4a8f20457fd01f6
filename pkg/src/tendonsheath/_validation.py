"""Small input-checking helpers shared by the public API."""

import math
import numbers

import numpy as np

from .exceptions import DomainError


def check_finite(value, name):
    """Return ``value`` as float, rejecting NaN, infinities and non-numbers."""
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def check_positive(value, name, allow_inf=False):
    """Return ``value`` as float after checking ``value > 0``."""
    if allow_inf and isinstance(value, numbers.Real) and value == math.inf:
        return math.inf
    value = check_finite(value, name)
    if value <= 0.0:
        raise DomainError(f"{name} must be > 0, got {value!r}")
    return value


def check_nonnegative(value, name):
    """Return ``value`` as float after checking ``value >= 0``."""
    value = check_finite(value, name)
    if value < 0.0:
        raise DomainError(f"{name} must be >= 0, got {value!r}")
    return value


def check_angle(theta, name="theta", low=0.0, high=math.pi):
    """Return ``theta`` as float after checking ``low <= theta <= high``."""
    theta = check_finite(theta, name)
    if theta < low or theta > high:
        raise DomainError(f"{name} must lie in [{low}, {high}], got {theta!r}")
    return theta


def check_theta_grid(grid, name="theta_grid"):
    """Validate an ordered elbow-angle grid and return it as a float array.

    Args:
        grid: Iterable of angles in radians.
        name: Label used in error messages.

    Returns:
        1-D float64 array, nondecreasing, inside [0, pi].
    """
    arr = np.asarray(grid, dtype=float).reshape(-1)
    if arr.size == 0:
        return arr
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    if arr.min() < 0.0 or arr.max() > math.pi:
        raise DomainError(f"{name} must lie in [0, pi]")
    if np.any(np.diff(arr) < 0.0):
        raise DomainError(f"{name} must be sorted ascending")
    return arr


def check_choice(value, name, choices):
    """Return ``value`` if it is one of ``choices``."""
    if value not in choices:
        raise DomainError(f"{name} must be one of {sorted(choices)}, got {value!r}")
    return value


def as_1d(X, name="X"):
    """Coerce array-like input of shape (n,) or (n, 1) to a 1-D float array."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise DomainError(f"{name} must have shape (n,) or (n, 1), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    return arr
