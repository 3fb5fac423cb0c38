from __future__ import annotations

import pytest

from coxconv import CoxeterSystem

# criterion number -> (title, outcome); filled by the acceptance module
ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        ACCEPTANCE_RESULTS[number] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, verdict = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {verdict}  {title}")


@pytest.fixture(scope="session")
def A2():
    return CoxeterSystem.from_type("A", 2)


@pytest.fixture(scope="session")
def A3():
    return CoxeterSystem.from_type("A", 3)


@pytest.fixture(scope="session")
def B3():
    return CoxeterSystem.from_type("B", 3)
