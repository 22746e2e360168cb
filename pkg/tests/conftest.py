import pathlib

import pytest

from bddpower import BddManager

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
EXAMPLE1_TV = "10001111"

_criteria = {}


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def ex1():
    """The worked example f = x1 + x2'x3' under <x1, x2, x3>."""
    m = BddManager(["x1", "x2", "x3"])
    return m, m.from_truth_vector(EXAMPLE1_TV)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    n = marker.args[0]
    if report.failed:
        _criteria[n] = "FAIL"
    elif report.when == "call":
        _criteria.setdefault(n, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n:>2}: {_criteria[n]}")
