"""Shared pytest plumbing: per-criterion pass/fail lines in the summary.

Tests marked ``@pytest.mark.criterion("...")`` are grouped by their label;
the terminal summary prints one PASS/FAIL line per label so the acceptance
status is readable at a glance.
"""

import pytest

_outcomes = {}
_order = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    failed = report.failed or (report.skipped and report.when == "call")
    if report.when == "call" or (report.when == "setup" and not report.passed):
        if label not in _outcomes:
            _outcomes[label] = True
            _order.append(label)
        if failed:
            _outcomes[label] = False


def pytest_terminal_summary(terminalreporter):
    if not _order:
        return
    terminalreporter.section("acceptance criteria")
    for label in _order:
        status = "PASS" if _outcomes[label] else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}")
