import pytest

from pacmeasure import catalog


@pytest.fixture(scope="session")
def squares():
    return catalog.get("squares")


@pytest.fixture(scope="session")
def fifth_root():
    return catalog.get("fifth-root")


@pytest.fixture(scope="session")
def s5():
    return catalog.get("s5-transposition")


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, in criterion order."""
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::test_criterion" in getattr(rep, "nodeid", "") and rep.when == "call":
                rows[rep.nodeid] = "PASS" if rep.passed else "FAIL"
    if not rows:
        return
    terminalreporter.section("acceptance criteria")

    def key(nodeid):
        return int(nodeid.split("test_criterion_")[1].split("_")[0])

    for nodeid in sorted(rows, key=key):
        terminalreporter.write_line(f"{rows[nodeid]}  {nodeid.split('::')[1]}")
