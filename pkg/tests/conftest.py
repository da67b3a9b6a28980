import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from powerforce.constants import Constants, natural_units  # noqa: E402

EPS_SWEEP = (1.0, 0.37, 5.0)

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def natural():
    return natural_units()


@pytest.fixture(params=EPS_SWEEP, ids=lambda e: f"eps={e}")
def consts(request):
    return Constants(1.0, request.param, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def box1d():
    from powerforce.grid import GridSpec
    return GridSpec(1, 256, 32.0)


@pytest.fixture
def periodic1d():
    from powerforce.grid import GridSpec
    return GridSpec(1, 64, 2 * math.pi)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.call_passed = report.passed
