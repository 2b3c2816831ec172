import os

import pytest

from qweyl.suites import run_tasks

ACCEPTANCE_LINES = []


def jobs():
    return int(os.environ.get("QWEYL_JOBS", min(4, os.cpu_count() or 1)))


def run_suite(tasks):
    return run_tasks(tasks, jobs())


def failures(checks):
    return [c for c in checks if c["status"] == "fail"]


@pytest.fixture
def record_criterion():
    def record(number, title, checks, extra=""):
        bad = failures(checks)
        status = "PASS" if not bad else "FAIL"
        line = "criterion %d %s: %s (%d checks, %d failed)%s" % (
            number, title, status, len(checks), len(bad), "; " + extra if extra else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return bad
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
