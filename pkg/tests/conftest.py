"""Shared fixtures; collects acceptance lines for the terminal summary."""
import pytest

from pdm_oscillator import ModelParams

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def p04():
    return ModelParams.from_gtilde(0.4)


@pytest.fixture(scope="session")
def p02():
    return ModelParams.from_gtilde(0.2)


@pytest.fixture(scope="session")
def p0():
    return ModelParams.from_gtilde(0.0)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
