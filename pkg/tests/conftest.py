"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_RESULTS: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and report.passed:
        return
    number, title = marker.args
    entry = _RESULTS.setdefault(number, {"title": title, "failed": [], "ran": False})
    entry["ran"] = True
    if report.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        failed = sorted(set(entry["failed"]))
        status = "FAIL" if failed else "PASS"
        detail = f"  [failing: {', '.join(failed)}]" if failed else ""
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']}{detail}")
