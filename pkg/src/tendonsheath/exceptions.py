"""Exception hierarchy for the tendon-sheath toolkit.

Every error raised on purpose derives from ``TendonSheathError`` so callers
(and the CLI) can map families of failures onto exit codes.
"""


class TendonSheathError(Exception):
    """Base class for all package errors."""


class DomainError(TendonSheathError, ValueError):
    """An argument lies outside the domain of an operation."""


class NegativeForceError(DomainError):
    """A cable force that must be nonnegative was negative."""


class DegenerateGeometryError(TendonSheathError, ValueError):
    """Geometry collapses (coincident anchors, repeated path points)."""


class SingularCouplingError(TendonSheathError, ArithmeticError):
    """The coupled compliance denominator vanishes."""


class SolverError(TendonSheathError, RuntimeError):
    """The quasi-static solve failed at one elbow angle.

    Args:
        message: Human-readable reason.
        theta: Elbow angle in radians at which the failure happened, if known.
    """

    def __init__(self, message, theta=None):
        if theta is not None:
            message = f"{message} (theta={theta!r} rad)"
        super().__init__(message)
        self.theta = theta


class NonConvergenceError(SolverError):
    """The active-set loop exceeded its switch budget."""


class InfeasibleBracketError(TendonSheathError, RuntimeError):
    """Even the upper end of a pretension bracket leaves slack."""


class InfeasibleRangeError(TendonSheathError, RuntimeError):
    """No radius ratio in the searched range is slack-free."""


class ConfigError(TendonSheathError, ValueError):
    """Base class for configuration problems.

    Args:
        key: Dotted key path (``section.key``) the problem concerns.
        message: Explanation.
    """

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


class MissingKeyError(ConfigError):
    """A required configuration key is absent."""


class UnknownKeyError(ConfigError):
    """A configuration key is not recognised."""


class UnitSuffixError(ConfigError):
    """A configuration key lacks the mandatory unit suffix."""


class RangeError(ConfigError):
    """A configuration value violates its range invariant."""


class CalibrationParseError(TendonSheathError, ValueError):
    """Malformed load-cell CSV content.

    Args:
        path: File being parsed.
        line: 1-based line number of the offending row.
        message: Explanation.
    """

    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


class UnitMismatchError(CalibrationParseError):
    """Load-cell CSV columns carry a unit other than kilogram-force."""


class UnknownColumnError(TendonSheathError, KeyError):
    """A requested CSV column does not exist."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""
