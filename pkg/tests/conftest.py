import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from edgerefine import Graph, Partition  # noqa: E402

# acceptance-criterion outcomes, printed in the terminal summary
CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, title, detail = CRITERIA[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} {detail}")


@pytest.fixture
def triangle():
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def k4():
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def k4_three_parts(k4):
    # E0 = {01, 23}, E1 = {02, 13}, E2 = {03, 12}
    part = {(0, 1): 0, (2, 3): 0, (0, 2): 1, (1, 3): 1, (0, 3): 2, (1, 2): 2}
    return Partition(k4, 3, 1, [part[e] for e in k4.edges])


@pytest.fixture
def path3():
    return Graph(3, [(0, 1), (1, 2)])
