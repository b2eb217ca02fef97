"""Acceptance reporting: one PASS/FAIL line per criterion at the end of the run."""
import pytest

_results: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    n, title = m.args
    entry = _results.setdefault(n, [title, True, False])
    if rep.failed:
        entry[1] = False
    if rep.when == "call":
        entry[2] = True


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        title, ok, ran = _results[n]
        status = "PASS" if ok and ran else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
