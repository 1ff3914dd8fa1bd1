import numpy as np
import pytest

from hiddencorr import pure_state


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bell():
    """The four-level state (|1> + |4>)/sqrt(2), i.e. |11> + |22> on two artificial qubits."""
    return pure_state([1, 0, 0, 1])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
