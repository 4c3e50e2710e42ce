import time
from contextlib import contextmanager

import pytest

_results: list[tuple[str, str, str, float]] = []


@contextmanager
def _budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f} s, budget {seconds} s"


@pytest.fixture
def budget():
    """``with budget(5): ...`` fails the test when the block runs over."""
    return _budget


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label, title = marker.args
    if report.when == "call":
        _results.append((label, title, "PASS" if report.passed else "FAIL", report.duration))
    elif report.when == "setup" and report.skipped:
        _results.append((label, title, "SKIP", 0.0))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label, title, verdict, duration in _results:
        terminalreporter.write_line(f"{verdict}  [{label:>3}] {title} ({duration:.2f} s)")
