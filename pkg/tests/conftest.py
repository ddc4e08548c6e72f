"""Per-criterion pass/fail lines for the acceptance suite."""
from __future__ import annotations

import pytest

_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    failed = rep.failed or (rep.when == "call" and not rep.passed)
    if rep.when == "call" or failed:
        prev = _RESULTS.get(n)
        status = "FAIL" if failed or (prev and prev[0] == "FAIL") else "PASS"
        _RESULTS[n] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, title = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")
