import math

import mpmath
import pytest

from smallw.analysis import clear_reference_cache


def agree_digits(a, b) -> float:
    """Number of matching significant decimal digits of ``a`` and ``b``."""
    with mpmath.workprec(1024):
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        if a == b:
            return math.inf
        return float(-mpmath.log10(abs(a - b) / abs(b)))


def rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


@pytest.fixture(scope="session")
def hp():
    """A private 60-digit mpmath context for independent reference values."""
    ctx = mpmath.MPContext()
    ctx.dps = 60
    return ctx


@pytest.fixture
def fresh_cache():
    clear_reference_cache()
    yield
    clear_reference_cache()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
