import os
import sys
from collections import defaultdict

sys.path.insert(0, os.path.dirname(__file__))

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number this test checks")


def pytest_runtest_logreport(report):
    marker = _criteria.get(report.nodeid)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes[marker].append((report.nodeid, report.passed))


_criteria = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria[item.nodeid] = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_outcomes):
        results = _outcomes[n]
        ok = all(passed for _, passed in results)
        good = sum(passed for _, passed in results)
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({good}/{len(results)} checks)")
        for nodeid, passed in results:
            if not passed:
                tr.write_line(f"    failed: {nodeid.split('::', 1)[1]}")
