import re
import time

import numpy as np
import pytest

from diaphony.core import PointSet

_START = time.perf_counter()
_CRITERIA: dict = {}
_CRITERION = re.compile(r"test_criterion_(\d+)_")


def elapsed() -> float:
    return time.perf_counter() - _START


def pytest_collection_modifyitems(session, config, items):
    # the runtime criterion has to see every other test finish first
    last = [it for it in items if "test_criterion_14_" in it.name]
    rest = [it for it in items if it not in last]
    items[:] = rest + last


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call":
        _CRITERIA[key] = "PASS" if report.passed else "FAIL"
    elif report.failed:
        _CRITERIA[key] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {key:2d}: {_CRITERIA[key]}")


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240601))


def interior_points(rng, n, d):
    pts = rng.random((n, d))
    pts[pts == 0.0] = 0.5
    return PointSet(pts)
