from __future__ import annotations

import re

_RESULTS: dict[int, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if m and (report.when == "call" or report.outcome == "failed"):
        k = int(m.group(1))
        if report.when == "call" or k not in _RESULTS:
            _RESULTS[k] = ("PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    from .test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        status, secs = _RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {status}  {CRITERIA[k]}  [{secs:.2f}s]")
