import sys
from pathlib import Path

import pytest

from ergopt.graph import TransitionGraph
from ergopt.symbolic import Potential, SftSystem

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = []


@pytest.fixture
def two_loops():
    """Loops of weight 1 and 2 joined by zero-weight connectors."""
    return TransitionGraph(2, [(0, 0, 1), (1, 1, 2), (0, 1, 0), (1, 0, 0)])


@pytest.fixture
def full2():
    return SftSystem.full_shift("ab")


@pytest.fixture
def worked(full2):
    f = Potential(2, {"aa": 1, "ab": 0, "ba": 0, "bb": 2})
    g = Potential(2, {"aa": 1, "ab": 0, "ba": 0, "bb": 0})
    return full2, f, g


@pytest.fixture
def three_lines(full2):
    """Cycle lines -t, 1 and t: breakpoints at -1 and 1."""
    f = Potential(2, {"aa": 0, "ab": 1, "ba": 1, "bb": 0})
    g = Potential(2, {"aa": -1, "ab": 0, "ba": 0, "bb": 1})
    return full2, f, g


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
