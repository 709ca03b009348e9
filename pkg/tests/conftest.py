from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from qcitools.corpus import B_IDEAL, ring_B
from qcitools.fields import GF, QQ

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def B101():
    return ring_B(GF(101))


@pytest.fixture(scope="session")
def BQQ():
    return ring_B(QQ)


@pytest.fixture(scope="session")
def I_gens():
    return list(B_IDEAL)


_ACCEPTANCE_LINES: list[tuple[int, str]] = []


@pytest.fixture
def criterion():
    """Record and print a pass/fail line for an acceptance criterion, then assert it."""

    def record(number: int, title: str, passed: bool, detail: str = "") -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title}"
        if detail:
            line += f" ({detail})"
        print(line)
        _ACCEPTANCE_LINES.append((number, line))
        assert passed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
