import numpy as np
import pytest

from _support import SAMPLE_A, SAMPLE_B, INVALID


@pytest.fixture
def sample_a():
    return SAMPLE_A


@pytest.fixture
def sample_b():
    return SAMPLE_B


@pytest.fixture
def invalid_sample():
    return INVALID


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_CRITERIA_LINES = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line; printed now and again in the terminal summary."""

    def record(number, ok, detail):
        line = f"AC{number} {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        _CRITERIA_LINES.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA_LINES):
            terminalreporter.write_line(line)
