"""Acceptance criteria, each checked at its stated tolerance.

Every test records one ``PASS``/``FAIL`` line that is echoed in the terminal
summary. A criterion that the model cannot meet is still evaluated as stated
and is marked ``xfail(strict=True)`` so the run reports it honestly.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest
from conftest import make_config, record_acceptance

from tendonsheath.calibrate import estimate_mu, ingest_loadcell_csv, tension_ratio
from tendonsheath.capstan import (
    Direction,
    FrictionSpec,
    beta_factors,
    beta_unit_closed,
    beta_unit_series,
    tension_gradient,
    transmit,
)
from tendonsheath.cli import main, shipped_path
from tendonsheath.geometry import ArmGeometry, moment_arm_flexor, noslack_radius_ratio
from tendonsheath.loadmodel import LoadCase, load_torque
from tendonsheath.solver import default_grid, simulate_trajectory, slack_metric
from tendonsheath.sweep import SweepSpec, run_sweep
from tendonsheath.transmission import (
    compatibility_residual,
    motor_torque_rigid,
    motor_torque_two_spool,
    solve_proximal_tensions,
)

PULL, RELEASE = Direction.PULL_THROUGH, Direction.RELEASE_THROUGH
THETA_EXP = 2.52


def verdict(label, ok, detail):
    record_acceptance(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
    assert ok, detail


def _geom():
    return ArmGeometry(0.04, 0.15, 0.02, 0.15, 0.045)


# 1 -------------------------------------------------------------------------


def test_criterion_1_calibration_reproduction():
    start = time.perf_counter()
    samples = ingest_loadcell_csv(shipped_path("table_a1.csv"))
    r_up, r_down = tension_ratio(samples, "raise"), tension_ratio(samples, "lower")
    mu_up, mu_down = estimate_mu(r_up, THETA_EXP), estimate_mu(r_down, THETA_EXP)
    elapsed = time.perf_counter() - start
    ok = (
        abs(r_up - 1.202) <= 1e-3
        and abs(r_down - 1.208) <= 1e-3
        and abs(mu_up - 0.073) <= 1e-3
        and abs(mu_down - 0.075) <= 1e-3
        and elapsed < 0.1
    )
    verdict(
        "criterion 1 calibration reproduction",
        ok,
        f"ratios {r_up:.5f}/{r_down:.5f}, mu {mu_up:.5f}/{mu_down:.5f}, {elapsed * 1e3:.2f} ms",
    )


# 2 -------------------------------------------------------------------------


def test_criterion_2a_noslack_ratio_value():
    start = time.perf_counter()
    value = noslack_radius_ratio(_geom(), math.pi / 2)
    elapsed = time.perf_counter() - start
    ok = abs(value - 1.8350) <= 1e-3 and value > 1.0 and elapsed < 0.1
    verdict(
        "criterion 2a no-slack ratio at pi/2",
        ok,
        f"ratio(pi/2) = {value:.6f} (> 1), {elapsed * 1e3:.2f} ms",
    )


def test_criterion_2a_ratio_grows_with_angle():
    grid = np.linspace(0.05, math.pi / 2, 200)
    ratio = noslack_radius_ratio(_geom(), grid)
    ok = bool(np.all(np.diff(ratio) > 0))
    verdict(
        "criterion 2a companion: ratio increases with theta",
        ok,
        f"ratio {ratio[0]:.4f} at 0.05 rad -> {ratio[-1]:.4f} at pi/2",
    )


@pytest.mark.xfail(strict=True, reason="the ratio increases with theta on (0.05, pi/2]; see the companion check")
def test_criterion_2b_noslack_ratio_strictly_decreasing():
    start = time.perf_counter()
    grid = np.linspace(0.05, math.pi / 2, 200)
    ratio = noslack_radius_ratio(_geom(), grid)
    elapsed = time.perf_counter() - start
    steps = np.diff(ratio)
    ok = bool(np.all(steps < 0)) and elapsed < 0.1
    verdict(
        "criterion 2b no-slack ratio strictly decreasing",
        ok,
        f"{int(np.sum(steps < 0))} of {steps.size} steps decrease, {elapsed * 1e3:.2f} ms",
    )


# 3 -------------------------------------------------------------------------


def _rk4_semicircle(mu, sign, n=2001):
    s = np.linspace(0.0, math.pi, n)
    y = 1.0
    for k in range(n - 1):
        h = s[k + 1] - s[k]
        f = lambda F: sign * tension_gradient(F, mu, 1.0)  # noqa: E731
        k1 = f(y)
        k2 = f(y + h / 2 * k1)
        k3 = f(y + h / 2 * k2)
        k4 = f(y + h * k3)
        y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def test_criterion_3_capstan_suite():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(2000):
        F, mu = rng.uniform(0, 1e4), rng.uniform(0, 1)
        p1, p2 = rng.uniform(0, 4 * math.pi, size=2)
        back = transmit(transmit(F, mu, p1, PULL), mu, p1, RELEASE)
        chain = transmit(transmit(F, mu, p1, PULL), mu, p2, PULL)
        whole = transmit(F, mu, p1 + p2, PULL)
        ident = transmit(F, 0.0, p1, PULL), transmit(F, 0.0, p1, RELEASE)
        for got, want in ((back, F), (chain, whole), (ident[0], F), (ident[1], F)):
            worst = max(worst, abs(got - want) / max(abs(want), 1e-300))
    mu = 0.07
    ode_err = max(
        abs(_rk4_semicircle(mu, -1.0) - math.exp(mu * math.pi)),
        abs(_rk4_semicircle(mu, +1.0) - math.exp(-mu * math.pi)),
    )
    ok = worst <= 1e-12 and ode_err <= 1e-6
    verdict(
        "criterion 3 capstan suite",
        ok,
        f"worst identity rel error {worst:.2e}, ODE error {ode_err:.2e}",
    )


# 4 -------------------------------------------------------------------------


def test_criterion_4_algebraic_identities():
    from tendonsheath.capstan import TendonSpec
    from tendonsheath.transmission import DriveSpec, coupling_coefficients

    rng = np.random.default_rng(4)
    worst16 = worst17 = 0.0
    for _ in range(10_000):
        drive = DriveSpec(
            rng.uniform(0.005, 0.1),
            rng.uniform(0.2, 2.0),
            math.inf if rng.random() < 0.1 else 10 ** rng.uniform(2, 6),
            math.inf if rng.random() < 0.1 else 10 ** rng.uniform(2, 6),
        )
        friction = FrictionSpec(rng.uniform(0, 0.3), rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        tendon = TendonSpec(rng.uniform(0.2, 3), rng.uniform(5e-4, 3e-3), 10 ** rng.uniform(9, 11.5), 100.0)
        c = coupling_coefficients(friction, tendon, drive)
        tau_m, F_O_f, F_O_e = rng.uniform(-20, 20), rng.uniform(-500, 500), rng.uniform(-500, 500)
        H_f, H_e = rng.uniform(-0.2, 0.2, size=2)
        F_t_f, F_t_e = solve_proximal_tensions(tau_m, F_O_f, F_O_e, H_f, H_e, drive, c)
        worst16 = max(worst16, abs(compatibility_residual(F_t_f, F_t_e, F_O_f, F_O_e, H_f, H_e, drive, c)))
        worst17 = max(worst17, abs(motor_torque_two_spool(F_t_f, F_t_e, drive) - tau_m))
    x = 1e-5
    taylor = max(abs(beta_unit_series(x, s) - beta_unit_closed(x, s)) for s in (-1, 1))
    # The public factors also agree at the switch-over scale.
    beta_t, _ = beta_factors(FrictionSpec(x, 1.0, 1.0), 1.0)
    taylor = max(taylor, abs(beta_t - beta_unit_series(x, -1)))
    ok = worst16 <= 1e-9 and worst17 <= 1e-9 and taylor <= 1e-10
    verdict(
        "criterion 4 algebraic identities",
        ok,
        f"compatibility residual {worst16:.2e} m, torque residual {worst17:.2e} N*m, series gap {taylor:.2e}",
    )


# 5 -------------------------------------------------------------------------


def _integral(config, grid):
    return slack_metric(simulate_trajectory(config, grid))


def test_criterion_5_slack_phenomenology():
    start = time.perf_counter()
    grid = default_grid()
    notes = []

    base = simulate_trajectory(make_config(), grid)
    a = max(p.slack_e for p in base) > 0.0
    notes.append(f"(a) extensor slack {max(p.slack_e for p in base) * 1e3:.2f} mm")

    by_pre = [_integral(make_config(F_pre=f), grid)[1] for f in (50.0, 100.0, 150.0, 200.0)]
    heavy = _integral(make_config(mass=10.0, F_pre=200.0), grid)[0]
    b = all(y <= x for x, y in zip(by_pre, by_pre[1:])) and heavy > 0.0
    notes.append(f"(b) integral over F_pre {[f'{v:.2e}' for v in by_pre]}, 10 kg/200 N max {heavy * 1e3:.2f} mm")

    by_k = [_integral(make_config(K=k), grid)[1] for k in (3000.0, 1000.0, 300.0)]
    c = all(y <= x for x, y in zip(by_k, by_k[1:]))
    notes.append(f"(c) integral over K 3000->300 {[f'{v:.2e}' for v in by_k]}")

    ref = _integral(make_config(eta=1.0), grid)
    etas = {e: _integral(make_config(eta=e), grid) for e in (0.7, 0.8, 0.9)}
    d = all(m[1] < ref[1] for m in etas.values()) and any(m[0] == 0.0 for m in etas.values())
    notes.append(f"(d) eta integrals {[f'{etas[e][1]:.2e}' for e in (0.7, 0.8, 0.9)]} vs {ref[1]:.2e}")

    elapsed = time.perf_counter() - start
    ok = a and b and c and d and elapsed < 5.0
    verdict("criterion 5 slack phenomenology", ok, "; ".join(notes) + f"; {elapsed:.2f} s")


# 6 -------------------------------------------------------------------------


def test_criterion_6_torque_ordering():
    geom = _geom()
    R, mu, phi = 0.03, 0.07, math.pi
    threshold = R * math.exp(mu * phi)
    grid = default_grid()
    masses = (0.0, 3.0, 5.0, 10.0)
    checked = 0
    ok = True
    for theta in grid:
        J_f = moment_arm_flexor(geom, theta)
        if J_f <= threshold:
            continue
        gaps = []
        for m in masses:
            tau_a = load_torque(LoadCase(m), theta)
            if tau_a <= 0.0:
                break
            tau_m = motor_torque_rigid(tau_a, R, mu, phi, J_f)
            ok &= tau_m < tau_a
            gaps.append(tau_a - tau_m)
        else:
            ok &= all(y > x for x, y in zip(gaps, gaps[1:]))
            checked += 1
    ok &= checked > 0
    verdict(
        "criterion 6 torque ordering",
        ok,
        f"tau_m < tau_a with gap rising in mass at {checked} angles where J_f > {threshold:.4f} m",
    )


# 7 -------------------------------------------------------------------------


def test_criterion_7_determinism(tmp_path):
    runs = []
    for k in range(3):
        out = tmp_path / f"run{k}.csv"
        subprocess.run(
            [sys.executable, "-m", "tendonsheath", "simulate", "--config", "paper_baseline", "--out", str(out)],
            check=True,
            capture_output=True,
        )
        runs.append(out.read_bytes())
    same_runs = all(r == runs[0] for r in runs)

    sweep = shipped_path("load_sweep.ini")
    one, many = tmp_path / "one.csv", tmp_path / "many.csv"
    main(["sweep", "--config", "paper_baseline", "--sweep", sweep, "--out", str(one), "--jobs", "1"])
    main(["sweep", "--config", "paper_baseline", "--sweep", sweep, "--out", str(many), "--jobs", "4"])
    same_threads = one.read_bytes() == many.read_bytes()

    spec = SweepSpec(make_config(), tuple(default_grid()), mass_ext=(0.0, 3.0, 5.0, 10.0))
    start = time.perf_counter()
    run_sweep(spec)
    elapsed = time.perf_counter() - start

    ok = same_runs and same_threads and elapsed < 1.0
    verdict(
        "criterion 7 end-to-end determinism",
        ok,
        f"3 runs identical: {same_runs}, 1 vs 4 threads identical: {same_threads}, 181x4 sweep {elapsed:.3f} s",
    )
