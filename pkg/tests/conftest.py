from __future__ import annotations

import re
import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("mforge", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("mforge")

_CRITERION = re.compile(r"test_criterion_(\d+)")
_outcomes: dict[int, str] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    k = int(match.group(1))
    if report.when == "call" or report.failed:
        if report.failed:
            _outcomes[k] = "FAIL"
        else:
            _outcomes.setdefault(k, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {k}: {_outcomes[k]}")
