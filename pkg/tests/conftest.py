import numpy as np
import pytest
from hypothesis import settings

from tfcompact import AnalyticSignalSpec, Signal, TimeGrid, make_signal, normalize

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# lines printed by the acceptance suite, echoed again in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def grid():
    return TimeGrid(8.0, 1 / 32)


@pytest.fixture(scope="session")
def phi(grid):
    return make_signal(AnalyticSignalSpec.gaussian(), grid)


@pytest.fixture(scope="session")
def phi_unit(phi):
    return normalize(phi)


def random_compact_signal(rng, grid, half_support=2.0):
    """Random complex samples supported in ``[-half_support, half_support]``."""
    t = grid.t
    v = rng.normal(size=grid.count) + 1j * rng.normal(size=grid.count)
    return Signal(grid, np.where(np.abs(t) <= half_support, v, 0.0))
