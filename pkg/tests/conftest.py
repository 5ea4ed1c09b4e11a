import numpy as np
import pytest

from enneper_forge import fixtures


@pytest.fixture(scope="session")
def surfaces():
    return fixtures.all_fixtures()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
