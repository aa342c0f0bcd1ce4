from __future__ import annotations

import pytest

from zassenhaus import library

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture(scope="session")
def corpus():
    return library.corpus()


@pytest.fixture(scope="session")
def small():
    return library.small_groups()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[k]
        line = f"[{'PASS' if ok else 'FAIL'}] {k:2d}. {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
