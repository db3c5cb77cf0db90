import pytest

from qcausal.numerics import make_grid
from qcausal.states import conjugate_pair

# criterion id -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[str, tuple[str, bool, str]] = {}


@pytest.fixture(scope="session")
def grid():
    return make_grid(-20.0, 20.0, 2 ** 14)


@pytest.fixture(scope="session")
def default_pair(grid):
    """Conjugate pair x0=0, sigma=1, chirp=0.25 (outside the validity regime)."""
    return conjugate_pair(0.0, 1.0, 0.25, grid)


@pytest.fixture(scope="session")
def validity_pair():
    """Conjugate pair deep in the stationary-phase regime: sqrt(pi/|gamma|) = 0.2 sigma."""
    g = make_grid(-10.0, 10.0, 2 ** 14)
    return conjugate_pair(0.0, 1.0, 40.0, g)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, (title, passed, detail) in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  [{key}] {title}: {detail}")
