import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criterion_results = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num): numbered end-to-end guarantee")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and report.when == "call":
        _criterion_results.append((mark.args[0], report.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    for num, ok in sorted(_criterion_results):
        terminalreporter.write_line(
            f"[criterion {num}] {'PASS' if ok else 'FAIL'}")
