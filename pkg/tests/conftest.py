import math

import pytest

from halfplane.scenario import HeavisideProfile, SmoothRampProfile, make_scenario

ALPHA = 2 * math.pi / 3


@pytest.fixture(scope="session")
def scenario():
    return make_scenario(ALPHA, 1.0)


@pytest.fixture(scope="session")
def heaviside():
    return HeavisideProfile()


@pytest.fixture(scope="session")
def ramp():
    return SmoothRampProfile(1.0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
