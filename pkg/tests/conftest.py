import time

import pytest

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}
SUITE_LIMIT_S = 15 * 60
_START = time.monotonic()


@pytest.fixture
def record():
    def _record(k, passed, detail):
        ACCEPTANCE[k] = (bool(passed), detail)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        tr.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    elapsed = time.monotonic() - _START
    verdict = "PASS" if elapsed < SUITE_LIMIT_S else "FAIL"
    tr.write_line(f"suite wall time: {elapsed:.0f} s (limit {SUITE_LIMIT_S} s): {verdict}")
