"""Collects acceptance verdicts and prints one line per criterion."""
import time

import pytest

RESULTS: dict = {}
_PASSED = pytest.StashKey[bool]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.stash[_PASSED] = report.passed


@pytest.fixture
def criterion(request):
    """Call with (number, title) to have the test's verdict and wall time
    reported under that acceptance criterion."""
    entry = {}

    def register(number: int, title: str) -> dict:
        entry.update(number=number, title=title, start=time.perf_counter())
        return entry

    yield register
    if entry:
        entry["seconds"] = time.perf_counter() - entry["start"]
        entry["passed"] = request.node.stash.get(_PASSED, False)
        RESULTS[entry["number"]] = entry


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        e = RESULTS[number]
        verdict = "PASS" if e["passed"] else "FAIL"
        terminalreporter.write_line(
            f"[{verdict}] {number:2d}. {e['title']} ({e['seconds']:.2f} s)")
