"""Collects acceptance outcomes and prints one line per criterion after the run."""

import pytest

_OUTCOMES: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    _, status, seconds = _OUTCOMES.get(number, (title, None, 0.0))
    if report.failed:
        status = "FAIL"
    elif report.passed and report.when == "call" and status != "FAIL":
        status = "PASS"
    _OUTCOMES[number] = (title, status, seconds + report.duration)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        title, status, duration = _OUTCOMES[number]
        status = status or "NOT RUN"
        terminalreporter.write_line(f"criterion {number}: {status:4}  {title}  ({duration:.1f}s)")
