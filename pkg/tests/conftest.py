import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

CRITERIA = {
    1: "table reproduction (144 cells)",
    2: "cross-route agreement",
    3: "symbolic r=4 examples",
    4: "p-primary worked series",
    5: "brute-force oracle equivalence",
    6: "identity suite",
    7: "counting formulas vs catalogues",
    8: "structural invariants",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = getattr(report, "criterion", None)
    if n is None:
        return
    entry = _outcomes.setdefault(n, [0, 0, 0.0])
    entry[0 if report.passed else 1] += 1
    entry[2] += report.duration


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, title in CRITERIA.items():
        if n not in _outcomes:
            tr.write_line(f"criterion {n}: NOT RUN  {title}")
            continue
        ok, bad, secs = _outcomes[n]
        status = "PASS" if bad == 0 else "FAIL"
        tr.write_line(f"criterion {n}: {status}  {title}  ({ok} passed, {bad} failed, {secs:.1f}s)")
