import math

import pytest

from elastinv import ElasticMedium, IncidentWave

ACCEPTANCE_LINES = []


def report(number, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append((number, line))
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def medium():
    return ElasticMedium(3.88, 2.56, 0.7 * math.pi)


@pytest.fixture(scope="session")
def medium_ii():
    return ElasticMedium(3.88, 2.56, 0.6 * math.pi)


@pytest.fixture(scope="session")
def s_wave():
    return IncidentWave("S", 5 * math.pi / 8)
