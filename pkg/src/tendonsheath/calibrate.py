"""Friction-coefficient identification from load-cell experiments.

A weight hangs from a tendon routed through a bent sheath; load cell I reads
the tension at the pulled end and load cell II the tension at the weight. When
the weight is raised the pulled end carries more, when it is lowered less, and
in both cases the ratio of the larger to the smaller reading is
``exp(mu * theta_exp)``.
"""

import csv
import math
from dataclasses import dataclass

from ._validation import check_finite
from .exceptions import CalibrationParseError, DomainError, UnitMismatchError

RAISE = "raise"
LOWER = "lower"
DIRECTIONS = (RAISE, LOWER)
HEADER = ("f_in_kg", "f_out_kg", "direction")
UNIT = "kg"


@dataclass(frozen=True)
class CalibrationSample:
    """One pair of simultaneous load-cell readings.

    Attributes:
        F_in: Load cell I (pulled end), kilogram-force.
        F_out: Load cell II (weight end), kilogram-force.
        direction: ``"raise"`` or ``"lower"``.
        unit: Unit tag of the readings.
    """

    F_in: float
    F_out: float
    direction: str
    unit: str = UNIT

    def __post_init__(self):
        for name in ("F_in", "F_out"):
            value = check_finite(getattr(self, name), name)
            if value <= 0.0:
                raise DomainError(f"{name} must be > 0, got {value!r}")
            object.__setattr__(self, name, value)
        if self.direction not in DIRECTIONS:
            raise DomainError(f"direction must be 'raise' or 'lower', got {self.direction!r}")

    @property
    def ratio(self):
        """Larger over smaller reading for the sample's direction."""
        if self.direction == RAISE:
            return self.F_in / self.F_out
        return self.F_out / self.F_in


def _check_header(path, lineno, row):
    cells = tuple(c.strip() for c in row)
    if cells == HEADER:
        return
    if len(cells) == 3 and cells[2] == "direction":
        units = [c.rsplit("_", 1)[-1] for c in cells[:2]]
        stems = [c.rsplit("_", 1)[0] for c in cells[:2]]
        if stems == ["f_in", "f_out"] and units != [UNIT, UNIT]:
            raise UnitMismatchError(
                path, lineno, f"readings must be in {UNIT}, header declares {units}"
            )
    raise CalibrationParseError(
        path, lineno, f"expected header {','.join(HEADER)!r}, got {','.join(cells)!r}"
    )


def ingest_loadcell_csv(path):
    """Read load-cell samples from a CSV file.

    The first non-comment line must be the header ``f_in_kg,f_out_kg,direction``.
    Lines starting with ``#`` and blank lines are ignored.

    Args:
        path: File path.

    Returns:
        List of CalibrationSample in file order.

    Raises:
        CalibrationParseError: on malformed content, naming the line.
        UnitMismatchError: if the header declares a unit other than kg.
    """
    samples = []
    header_seen = False
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            row = next(csv.reader([stripped]))
            if not header_seen:
                _check_header(path, lineno, row)
                header_seen = True
                continue
            if len(row) != 3:
                raise CalibrationParseError(path, lineno, f"expected 3 fields, got {len(row)}")
            try:
                f_in = float(row[0])
                f_out = float(row[1])
            except ValueError:
                raise CalibrationParseError(path, lineno, f"non-numeric reading in {stripped!r}") from None
            try:
                samples.append(CalibrationSample(f_in, f_out, row[2].strip()))
            except DomainError as exc:
                raise CalibrationParseError(path, lineno, str(exc)) from None
    if not header_seen:
        raise CalibrationParseError(path, 1, "missing header")
    return samples


def tension_ratio(samples, direction):
    """Mean larger/smaller reading ratio of one direction's samples.

    Args:
        samples: Iterable of CalibrationSample.
        direction: ``"raise"`` or ``"lower"``.

    Returns:
        Mean of per-sample ratios.
    """
    if direction not in DIRECTIONS:
        raise DomainError(f"direction must be 'raise' or 'lower', got {direction!r}")
    ratios = [s.ratio for s in samples if s.direction == direction]
    if not ratios:
        raise DomainError(f"no samples with direction {direction!r}")
    return math.fsum(ratios) / len(ratios)


def estimate_mu(ratio, theta_exp):
    """Friction coefficient ``ln(ratio) / theta_exp``.

    Args:
        ratio: Tension ratio, >= 1.
        theta_exp: Bend angle of the test rig, radians, > 0.
    """
    ratio = check_finite(ratio, "ratio")
    theta_exp = check_finite(theta_exp, "theta_exp")
    if ratio < 1.0:
        raise DomainError(f"ratio must be >= 1, got {ratio!r}")
    if theta_exp <= 0.0:
        raise DomainError(f"theta_exp must be > 0, got {theta_exp!r}")
    return math.log(ratio) / theta_exp


def calibration_report(samples, theta_exp):
    """Per-direction sample count, ratio and friction estimate.

    Directions without samples are omitted.

    Returns:
        List of dicts with keys ``direction, n, ratio, mu``.
    """
    report = []
    for direction in DIRECTIONS:
        n = sum(1 for s in samples if s.direction == direction)
        if n == 0:
            continue
        ratio = tension_ratio(samples, direction)
        report.append(
            {"direction": direction, "n": n, "ratio": ratio, "mu": estimate_mu(ratio, theta_exp)}
        )
    return report
