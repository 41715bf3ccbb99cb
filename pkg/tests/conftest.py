import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

SAMPLES = os.path.join(os.path.dirname(os.path.dirname(__file__)), "samples")

_criteria: dict = {}
_results: dict = {}


@pytest.fixture
def samples_dir():
    return SAMPLES


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, label): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criteria[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    if report.when == "call" or report.failed:
        _results.setdefault(report.nodeid, report.outcome)
        if report.failed:
            _results[report.nodeid] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (n, label) in sorted(_criteria.items(), key=lambda kv: kv[1][0]):
        outcome = _results.get(nodeid, "not run")
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {n}: {label} ({outcome})")
