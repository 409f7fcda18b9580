import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the outcome is read from the test report."""
    def describe(number, text):
        ACCEPTANCE_RESULTS[request.node.nodeid] = [number, text, None]
    return describe


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    entry = ACCEPTANCE_RESULTS.get(item.nodeid)
    if entry is not None and (rep.when == "call" or rep.failed):
        if entry[2] is None or rep.failed:
            entry[2] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, passed in sorted(ACCEPTANCE_RESULTS.values(), key=lambda e: (e[0], e[1])):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] criterion {number}: {text}")
