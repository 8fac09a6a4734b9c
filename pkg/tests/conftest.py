import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from acceptance_log import RESULTS  # noqa: E402


@pytest.fixture
def checkerboard():
    from thicklab.grid import GridColoring

    return GridColoring.from_function(4, 4, 2, lambda r, c: (r + c) % 2)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, note in RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {note}")
