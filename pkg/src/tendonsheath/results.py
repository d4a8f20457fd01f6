"""CSV emission and parsing for trajectories and sweep results.

Floats are written with ``repr`` (shortest round-trip decimal), so parsing an
emitted file gives back bit-identical values.
"""

import csv
import math

from .exceptions import DomainError, UnknownColumnError
from .solver import OperatingPoint

POINT_COLUMNS = (
    "theta_rad",
    "tau_a_nm",
    "tau_m_nm",
    "f_t_f_n",
    "f_t_e_n",
    "f_o_f_n",
    "f_o_e_n",
    "dl_ten_f_m",
    "dl_ten_e_m",
    "dl_se_f_m",
    "dl_se_e_m",
    "slack_f_m",
    "slack_e_m",
)

SUMMARY_COLUMNS = ("max_slack_m", "integral_slack_m_rad", "peak_tau_m_nm", "feasible", "error")


def format_number(value):
    """Shortest decimal string that parses back to the same float."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def emit_csv(results, path):
    """Write a trajectory or sweep results as CSV.

    Args:
        results: Nonempty list of OperatingPoint, or of sweep DesignResult.
            For sweeps every trajectory point becomes a row with the design's
            parameter columns prepended; failed designs contribute no rows.
        path: Output file path.
    """
    results = list(results)
    if not results:
        raise DomainError("emit_csv needs a nonempty result list")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = _writer(fh)
        if isinstance(results[0], OperatingPoint):
            w.writerow(POINT_COLUMNS)
            for p in results:
                w.writerow([format_number(x) for x in p.as_tuple()])
            return
        names = [name for name, _ in results[0].params]
        w.writerow(names + list(POINT_COLUMNS))
        for res in results:
            prefix = [format_number(v) for _, v in res.params]
            for p in res.trajectory:
                w.writerow(prefix + [format_number(x) for x in p.as_tuple()])


def emit_summary_csv(results, path):
    """Write one row per sweep design: parameters, slack metrics, status."""
    results = list(results)
    if not results:
        raise DomainError("emit_summary_csv needs a nonempty result list")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = _writer(fh)
        names = [name for name, _ in results[0].params]
        w.writerow(names + list(SUMMARY_COLUMNS))
        for r in results:
            w.writerow(
                [format_number(v) for _, v in r.params]
                + [
                    format_number(r.max_slack),
                    format_number(r.integral_slack),
                    format_number(r.peak_tau_m),
                    "true" if r.feasible else "false",
                    r.error or "",
                ]
            )


def emit_columns_csv(columns, path):
    """Write equal-length named columns (dict of name -> sequence) as CSV."""
    names = list(columns)
    lengths = {len(columns[n]) for n in names}
    if len(lengths) != 1:
        raise DomainError("columns must have equal length")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = _writer(fh)
        w.writerow(names)
        for row in zip(*(columns[n] for n in names)):
            w.writerow([format_number(x) for x in row])


def emit_report_csv(report, path):
    """Write calibration report rows (``direction, n, ratio, mu``) as CSV."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = _writer(fh)
        w.writerow(["direction", "n", "ratio", "mu"])
        for row in report:
            w.writerow([row["direction"], row["n"], format_number(row["ratio"]), format_number(row["mu"])])


def read_csv(path):
    """Parse a numeric CSV written by this module.

    Returns:
        ``(header, columns)`` where ``columns`` maps each name to a list of
        floats. Non-numeric cells (status text) are kept as strings.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DomainError(f"{path}: empty CSV")
    header = rows[0]
    columns = {name: [] for name in header}
    for row in rows[1:]:
        for name, cell in zip(header, row):
            try:
                columns[name].append(float(cell))
            except ValueError:
                columns[name].append(cell)
    return header, columns


def select_columns(columns, names):
    """Return the requested columns, raising UnknownColumnError if absent."""
    names = list(names)
    if not names:
        raise UnknownColumnError("no columns requested")
    missing = [n for n in names if n not in columns]
    if missing:
        raise UnknownColumnError(f"unknown column(s): {', '.join(missing)}")
    return [columns[n] for n in names]
