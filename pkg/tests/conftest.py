import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}


def _marker(item):
    m = item.get_closest_marker("criterion")
    return (m.args[0], m.args[1]) if m else None


def pytest_runtest_makereport(item, call):
    key = _marker(item)
    if key is None:
        return
    if call.when == "call" or call.excinfo is not None:
        ok = call.excinfo is None
        prev = _criteria.get(key, True)
        _criteria[key] = prev and ok


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), ok in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(0xC0FFEE)
