import cmath
import math

import pytest


def brute_moment(angles, k):
    """Independent oracle: sum of exp(i*k*theta) with cmath, no numpy."""
    return sum(cmath.exp(1j * k * a) for a in angles)


@pytest.fixture
def x0_angles():
    # the 5-point design at t=1, x=0: arccos(0) = pi/2, arccos(-1/2) = 2pi/3
    return [0.0, math.pi / 2, -math.pi / 2, 2 * math.pi / 3, -2 * math.pi / 3]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
