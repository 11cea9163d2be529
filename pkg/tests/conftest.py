import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skewlat.algebra import builtin  # noqa: E402
from skewlat.enumerate import all_up_to  # noqa: E402


@pytest.fixture(scope="session")
def sweep4():
    return all_up_to(4)


@pytest.fixture(scope="session")
def sweep5():
    return all_up_to(5)


@pytest.fixture(scope="session")
def nc5r():
    return builtin("NC5R")


@pytest.fixture(scope="session")
def nc5l():
    return builtin("NC5L")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
