from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from mahler21.numerics import PrecisionContext

settings.register_profile(
    "numeric", deadline=None, max_examples=15,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext()


@pytest.fixture(scope="session")
def ctx20():
    return PrecisionContext.from_digits(20)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
