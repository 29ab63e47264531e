import pytest
from hypothesis import HealthCheck, settings

from photonloc import Grid

settings.register_profile("default", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def small_grid():
    return Grid(16, 4.0)


@pytest.fixture(scope="session")
def grid32():
    return Grid(32, 8.0)


@pytest.fixture
def record():
    """Collects one summary line per acceptance criterion."""
    def add(line):
        ACCEPTANCE_LINES.append(line)
        print(line)
    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
