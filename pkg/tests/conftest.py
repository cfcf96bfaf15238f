import pytest

from egfverify.identities import run_all

ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def report12():
    """Full registry report at order 12, computed once per session."""
    return run_all(12)


@pytest.fixture
def acceptance():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, label = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {label}")
