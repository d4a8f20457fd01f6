import math

import pytest

from tendonsheath import (
    ArmGeometry,
    DriveSpec,
    FrictionSpec,
    LoadCase,
    SystemConfig,
    TendonSpec,
)

_ACCEPTANCE_LINES = []


def record_acceptance(line):
    """Store an acceptance verdict line and echo it to stdout."""
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def geom():
    return ArmGeometry(a1=0.04, b1=0.15, a2=0.02, b2=0.15, R_elb=0.045)


def make_config(mass=5.0, F_pre=100.0, K=3000.0, eta=1.0, phase="flexion", mu=0.07, **load_kw):
    return SystemConfig(
        geom=ArmGeometry(0.04, 0.15, 0.02, 0.15, 0.045),
        tendon=TendonSpec(L=2.0, d=1.5e-3, E=1.45e11, F_pre=F_pre),
        friction=FrictionSpec(mu, math.pi, math.pi),
        drive=DriveSpec(R_m_f=0.03, eta=eta, K_SE_f=K, K_SE_e=K),
        load=LoadCase(mass, **load_kw),
        phase=phase,
    )


@pytest.fixture
def baseline():
    return make_config()
