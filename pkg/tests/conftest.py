from hypothesis import HealthCheck, settings

settings.register_profile(
    "ccv",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)
settings.load_profile("ccv")


import time

import pytest


@pytest.fixture(scope="session")
def census48():
    """Census records up to order 48, their distinct covers and the elapsed time."""
    from ccv.analysis import census, distinct_records

    t0 = time.time()
    records = census(48)
    elapsed = time.time() - t0
    return {"records": records, "distinct": distinct_records(records), "seconds": elapsed}


_VERDICTS = []


@pytest.fixture
def verdict():
    """Record one acceptance line: ``verdict(number, ok, detail)``."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _VERDICTS.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_VERDICTS):
        terminalreporter.write_line(line)
