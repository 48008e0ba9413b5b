import pytest

from staircase.field import prime_field


@pytest.fixture(scope="session")
def gf5():
    return prime_field(5)


@pytest.fixture(scope="session")
def gf7():
    return prime_field(7)


@pytest.fixture(scope="session")
def gf11():
    return prime_field(11)


_CRITERIA: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA[report.nodeid] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (outcome, duration) in _CRITERIA.items():
        name = nodeid.split("::")[-1]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f}s)")
