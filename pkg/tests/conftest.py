from __future__ import annotations

import pytest
from mpmath import mp

from ramanujan_verify.numeric import PrecisionContext

# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def ctx() -> PrecisionContext:
    return PrecisionContext()


@pytest.fixture
def ctx15() -> PrecisionContext:
    return PrecisionContext(target_digits=15)


@pytest.fixture(autouse=True)
def _reset_precision():
    """Evaluators must not depend on (or leak) the global mpmath precision."""
    mp.dps = 15
    yield
    mp.dps = 15


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
