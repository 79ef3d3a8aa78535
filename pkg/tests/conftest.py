import pytest

from polarlab import make_grid
from polarlab.corpus import default_corpus

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def grid():
    return make_grid(2, 1440)


@pytest.fixture(scope="session")
def coarse():
    return make_grid(2, 360)


@pytest.fixture(scope="session")
def corpus(grid):
    return default_corpus(grid, 42)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
