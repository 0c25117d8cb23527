"""Shared fixtures; also the acceptance-line reporter.

The acceptance tests record one PASS/FAIL line per criterion through
the acceptance_report fixture; the lines are echoed in a dedicated
terminal section after the run so they stay visible under capture.
"""

from __future__ import annotations

from pathlib import Path

import pytest

FIXTURE_DIR = Path(__file__).parent / "fixtures"

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def load_fixture():
    """Parse a frozen b-file into {n: value}."""
    from latinrect.oeis import parse_bfile

    def load(name: str) -> dict[int, int]:
        return parse_bfile((FIXTURE_DIR / name).read_text())

    return load


@pytest.fixture(scope="session")
def acceptance_report():
    def record(criterion: int, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} -- {detail}"
        _acceptance_lines.append(line)
        print(line, flush=True)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
