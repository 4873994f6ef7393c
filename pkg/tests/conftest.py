"""Collects outcomes of tests marked with `criterion` and prints one line per criterion."""
import pytest

_labels = {}
_outcomes = {}
_nodes = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            n, text = m.args
            _labels[n] = text
            _nodes[item.nodeid] = n


@pytest.hookimpl(trylast=True)
def pytest_runtest_logreport(report):
    n = _nodes.get(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.failed or report.skipped:
        ok = report.passed if report.when == "call" else not report.failed and not report.skipped
        _outcomes.setdefault(n, []).append(ok)


def pytest_terminal_summary(terminalreporter):
    if not _labels:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_labels):
        results = _outcomes.get(n)
        if not results:
            verdict = "NOT RUN"
        else:
            verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  {_labels[n]}")
