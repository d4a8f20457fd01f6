"""Static SVG line plots of result CSV columns."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .exceptions import DomainError, UnknownColumnError  # noqa: E402
from .results import read_csv, select_columns  # noqa: E402

# Column-name suffix to axis unit, longest suffix first.
_UNITS = (
    ("_n_per_m", "N/m"),
    ("_m_rad", "m*rad"),
    ("_rad", "rad"),
    ("_nm", "N*m"),
    ("_kg", "kg"),
    ("_n", "N"),
    ("_m", "m"),
)

_SVG_RC = {
    "svg.hashsalt": "tendonsheath",
    "svg.fonttype": "none",
    "path.simplify": False,
}


def axis_label(column):
    """Column name with its unit in brackets, e.g. ``theta_rad [rad]``."""
    for suffix, unit in _UNITS:
        if column.endswith(suffix):
            return f"{column} [{unit}]"
    return f"{column} [-]"


def render_plot(csv_path, x, ys, out_path, title=None):
    """Draw one polyline per ``ys`` column against ``x`` and save as SVG.

    Args:
        csv_path: Numeric CSV file.
        x: Abscissa column name.
        ys: Nonempty list of ordinate column names.
        out_path: Destination ``.svg`` path.
        title: Optional plot title.

    Raises:
        UnknownColumnError: if ``ys`` is empty or a column is missing.
    """
    ys = list(ys)
    if not ys:
        raise UnknownColumnError("no y columns requested")
    _, columns = read_csv(csv_path)
    xs, *series = select_columns(columns, [x] + ys)
    for name, values in zip([x] + ys, [xs] + series):
        if any(isinstance(v, str) for v in values):
            raise DomainError(f"column {name!r} is not numeric")
    with plt.rc_context(_SVG_RC):
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        for name, values in zip(ys, series):
            ax.plot(xs, values, label=axis_label(name), linewidth=1.4)
        ax.set_xlabel(axis_label(x))
        ax.set_ylabel(axis_label(ys[0]) if len(ys) == 1 else "value")
        if title:
            ax.set_title(title)
        ax.grid(True, linewidth=0.4, alpha=0.6)
        if len(ys) > 1:
            ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(out_path, format="svg", metadata={"Date": None})
        plt.close(fig)
