"""Shared fixtures; collects one pass/fail line per acceptance criterion."""

from __future__ import annotations

import numpy as np
import pytest

_CRITERIA: dict[int, tuple[bool, str]] = {}


class CriterionRecorder:
    """Record the outcome of an acceptance criterion, then assert it."""

    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.details: list[str] = []
        self.ok = True

    def check(self, condition: bool, detail: str) -> None:
        self.details.append(("" if condition else "FAILED ") + detail)
        self.ok &= bool(condition)

    def finish(self) -> None:
        line = f"{self.title}: " + "; ".join(self.details)
        _CRITERIA[self.number] = (self.ok, line)
        print(f"CRITERION {self.number:2d} {'PASS' if self.ok else 'FAIL'} {line}")
        assert self.ok, line


@pytest.fixture
def criterion():
    return CriterionRecorder


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, line = _CRITERIA[number]
        terminalreporter.write_line(f"CRITERION {number:2d} {'PASS' if ok else 'FAIL'} {line}")
