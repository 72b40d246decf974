import re

import pytest

from slgentle import catalog

_AC = re.compile(r"test_ac(\d\d)_")
_results: dict[int, list[str]] = {}


@pytest.fixture
def running():
    return catalog.running_example()


@pytest.fixture
def z1():
    return catalog.loop_gentle()


@pytest.fixture
def z2():
    return catalog.loop_locally_gentle()


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or report.outcome != "passed":
        _results.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        outs = _results.get(k)
        if not outs:
            status = "NOT RUN"
        elif all(o == "passed" for o in outs):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {status:7s} {CRITERIA[k]}")
