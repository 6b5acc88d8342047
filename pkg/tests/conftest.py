"""Collects acceptance outcomes and prints one line per criterion."""

from __future__ import annotations

import pytest

_outcomes: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            num, title = mark.args
            entry = _outcomes.setdefault(num, {"title": title, "failed": [], "passed": 0, "total": 0})
            entry["total"] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    entry = _outcomes[mark.args[0]]
    if rep.failed:
        entry["failed"].append(item.name)
    elif rep.when == "call" and rep.passed:
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_outcomes):
        e = _outcomes[num]
        ok = not e["failed"] and e["passed"] == e["total"]
        status = "PASS" if ok else "FAIL"
        tr.write_line(f"criterion {num:2d}: {status}  {e['title']}  ({e['passed']}/{e['total']} checks)")
        for name in e["failed"]:
            tr.write_line(f"              failed: {name}")
