import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from tournament_census.catalog import get_catalog  # noqa: E402


@pytest.fixture(scope="session")
def catalog():
    return get_catalog()


@pytest.fixture(scope="session")
def reps(catalog):
    """Pattern name -> canonical representative tournament."""
    return {name: info.rep for name, info in catalog.patterns.items()}


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def record():
    """Record (and print) the single pass/fail line of an acceptance criterion."""

    def _record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE[number] = line
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
