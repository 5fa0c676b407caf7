"""Shared pytest wiring: per-criterion verdict lines for the release gate."""

import re

_CRITERIA: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    hit = re.search(r"::test_criterion_(\d+)_([a-z0-9_]+)", report.nodeid)
    if hit:
        number = int(hit.group(1))
        label = hit.group(2).replace("_", " ")
        _CRITERIA[number] = (label, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        label, passed = _CRITERIA[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number} ({label}): {verdict}")
