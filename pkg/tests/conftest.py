import sys

import mpmath
import pytest


@pytest.fixture(autouse=True)
def _mp_precision():
    # comparisons in the tests themselves run at the library's default precision
    with mpmath.workprec(192):
        yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
