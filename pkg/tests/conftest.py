import numpy as np
import pytest

from mbound import Exponents

EXPONENT_MATRIX = [(2.0, 1.5), (3.0, 2.0), (1.8, 1.3)]

# Lines collected by the acceptance tests and echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=EXPONENT_MATRIX, ids=lambda pq: f"p{pq[0]}-q{pq[1]}")
def exp(request):
    return Exponents(*request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
