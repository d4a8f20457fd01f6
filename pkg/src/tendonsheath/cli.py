"""Command-line interface.

Exit codes: 0 success, 2 configuration or usage error, 3 solver error
(including infeasible searches), 4 I/O error.
"""

import argparse
import math
import os
import sys
from importlib import resources

import numpy as np

from .calibrate import calibration_report, ingest_loadcell_csv
from .config import parse_config, parse_sweep_file
from .exceptions import (
    CalibrationParseError,
    ConfigError,
    DomainError,
    InfeasibleBracketError,
    InfeasibleRangeError,
    SingularCouplingError,
    SolverError,
    UnknownColumnError,
)
from .geometry import extension_functions, noslack_radius_ratio, noslack_radius_ratio_limit
from .plotting import render_plot
from .results import emit_columns_csv, emit_csv, emit_report_csv, emit_summary_csv
from .solver import DEFAULT_POINTS, default_grid, simulate_trajectory, slack_metric
from .sweep import SweepSpec, find_min_pretension, find_noslack_ratio, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_IO = 4

SHIPPED_CONFIGS = ("paper_baseline", "fig6_variant")
SHIPPED_DATA = ("load_sweep.ini", "table_a1.csv")


def shipped_path(name):
    """Filesystem path of a file shipped in the package ``data`` directory."""
    return str(resources.files("tendonsheath").joinpath("data", name))


def _resolve_config(path):
    # A bare shipped name is accepted when no such file exists.
    if not os.path.exists(path) and path in SHIPPED_CONFIGS:
        return shipped_path(path + ".ini")
    return path


def _resolve_data(path):
    # Same fallback for the bundled sweep and calibration files.
    if not os.path.exists(path) and path in SHIPPED_DATA:
        return shipped_path(path)
    return path


def _grid(args):
    return default_grid(args.theta_max_rad, args.points)


def _say(text):
    print(text, file=sys.stderr)


def cmd_simulate(args):
    config = parse_config(_resolve_config(args.config))
    traj = simulate_trajectory(config, _grid(args), n_jobs=args.jobs)
    emit_csv(traj, args.out)
    max_slack, integral = slack_metric(traj)
    _say(f"wrote {len(traj)} points to {args.out}; max slack {max_slack:.6g} m, integral {integral:.6g} m*rad")
    return EXIT_OK


def cmd_design_ratio(args):
    config = parse_config(_resolve_config(args.config))
    grid = _grid(args)
    h_f, h_e = extension_functions(config.geom, grid)
    ratio = np.array(
        [
            noslack_radius_ratio_limit(config.geom) if t == 0.0 else noslack_radius_ratio(config.geom, t)
            for t in grid
        ]
    )
    emit_columns_csv(
        {"theta_rad": grid, "h_f_m": h_f, "h_e_m": h_e, "noslack_ratio": ratio}, args.out
    )
    _say(f"wrote {len(grid)} points to {args.out}")
    return EXIT_OK


def cmd_sweep(args):
    config = parse_config(_resolve_config(args.config))
    axes, grid_opts = parse_sweep_file(_resolve_data(args.sweep), config)
    theta_max = args.theta_max_rad if args.theta_max_rad is not None else grid_opts.get("theta_max_rad", math.pi / 2)
    points = args.points if args.points is not None else grid_opts.get("points", DEFAULT_POINTS)
    spec = SweepSpec(base=config, theta_grid=tuple(default_grid(theta_max, points)), **axes)
    results = run_sweep(spec, n_jobs=args.jobs)
    if any(r.trajectory for r in results):
        emit_csv(results, args.out)
    else:
        emit_summary_csv(results, args.out)
    if args.summary:
        emit_summary_csv(results, args.summary)
    failed = sum(1 for r in results if r.error)
    feasible = sum(1 for r in results if r.feasible)
    _say(f"{len(results)} designs: {feasible} slack-free, {failed} failed")
    return EXIT_OK


def cmd_optimize(args):
    config = parse_config(_resolve_config(args.config))
    grid = _grid(args)
    if args.target == "min-pretension":
        value = find_min_pretension(config, tuple(args.bracket), args.tol, grid)
        line = f"min_pretension_n = {value!r}"
    else:
        value = find_noslack_ratio(config, tuple(args.eta_range), args.step, grid)
        line = f"noslack_eta = {value!r}"
    print(line)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(line + "\n")
    return EXIT_OK


def cmd_calibrate(args):
    samples = ingest_loadcell_csv(_resolve_data(args.data))
    report = calibration_report(samples, args.theta_exp_rad)
    if not report:
        raise DomainError(f"{args.data}: no samples")
    for row in report:
        print(f"{row['direction']}: n={row['n']} ratio={row['ratio']:.6f} mu={row['mu']:.6f}")
    if args.out:
        emit_report_csv(report, args.out)
    return EXIT_OK


def cmd_plot(args):
    render_plot(args.csv, args.x, args.y or [], args.out, title=args.title)
    _say(f"wrote {args.out}")
    return EXIT_OK


def _add_grid(p, theta_default=math.pi / 2, points_default=DEFAULT_POINTS):
    p.add_argument("--theta-max-rad", type=float, default=theta_default, help="upper end of the elbow-angle grid")
    p.add_argument("--points", type=int, default=points_default, help="number of grid points")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tendonsheath",
        description="Quasi-static double tendon-sheath elbow drive: simulation, sweeps and calibration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="solve a configuration over an elbow-angle grid")
    p.add_argument("--config", required=True, help="INI file, or a shipped name (paper_baseline, fig6_variant)")
    p.add_argument("--out", required=True, help="output CSV")
    p.add_argument("--jobs", type=int, default=None, help="worker threads")
    _add_grid(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("design-ratio", help="no-slack spool radius ratio over elbow angle")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    _add_grid(p)
    p.set_defaults(func=cmd_design_ratio)

    p = sub.add_parser("sweep", help="evaluate a Cartesian design grid")
    p.add_argument("--config", required=True, help="base configuration")
    p.add_argument("--sweep", required=True, help="INI file with a [sweep] section, or load_sweep.ini (shipped)")
    p.add_argument("--out", required=True, help="per-point CSV with parameter columns")
    p.add_argument("--summary", default=None, help="optional per-design summary CSV")
    p.add_argument("--jobs", type=int, default=None)
    _add_grid(p, theta_default=None, points_default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="search for a slack-free design")
    p.add_argument("target", choices=("min-pretension", "noslack-ratio"))
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="optional result file")
    p.add_argument("--bracket", type=float, nargs=2, default=(0.0, 400.0), metavar=("LOW", "HIGH"))
    p.add_argument("--tol", type=float, default=1.0, help="pretension resolution, N")
    p.add_argument("--eta-range", type=float, nargs=2, default=(0.5, 1.0), metavar=("LOW", "HIGH"))
    p.add_argument("--step", type=float, default=0.05, help="radius-ratio step")
    _add_grid(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("calibrate", help="friction coefficient from load-cell CSV")
    p.add_argument("data", help="CSV with header f_in_kg,f_out_kg,direction, or table_a1.csv (shipped)")
    p.add_argument("--theta-exp-rad", type=float, required=True, help="bend angle of the test rig")
    p.add_argument("--out", default=None, help="optional report CSV")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("plot", help="render CSV columns as an SVG line plot")
    p.add_argument("csv")
    p.add_argument("--x", required=True, help="abscissa column")
    p.add_argument("--y", nargs="+", default=None, help="ordinate column(s)")
    p.add_argument("--out", required=True, help="output SVG")
    p.add_argument("--title", default=None)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError, UnknownColumnError) as exc:
        _say(f"error: {exc}")
        return EXIT_CONFIG
    except (SolverError, SingularCouplingError, InfeasibleBracketError, InfeasibleRangeError) as exc:
        _say(f"solver error: {exc}")
        return EXIT_SOLVER
    except (OSError, CalibrationParseError) as exc:
        _say(f"io error: {exc}")
        return EXIT_IO
