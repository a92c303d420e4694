"""Collect acceptance verdicts and print one PASS/FAIL line per criterion."""

from __future__ import annotations

from helpers import ACCEPTANCE


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        tr.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k:>2}: {detail}")
