import pytest

from bumpforge.analysis import run_sweep
from bumpforge.polyapprox import Scheme

ODD_D = list(range(3, 32, 2))

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def optimal_sweep():
    return run_sweep(ODD_D, Scheme.OPTIMAL)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
