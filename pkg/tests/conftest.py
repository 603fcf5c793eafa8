import time

import pytest

_ACCEPTANCE: list[tuple[int, bool, str]] = []


def record(criterion: int, ok: bool, detail: str = ""):
    """Log one acceptance criterion outcome for the terminal summary."""
    _ACCEPTANCE.append((criterion, ok, detail))


@pytest.fixture(scope="session")
def verification_report():
    """One shared randomized verification run, with its wall time."""
    from weldkit.verify import run_verification

    start = time.perf_counter()
    report = run_verification(seed=0, rounds=200, max_side=12)
    return report, time.perf_counter() - start


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(_ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {criterion}: {detail}")
