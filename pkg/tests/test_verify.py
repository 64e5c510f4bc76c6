import pytest

from levyleblond.verify import SUITES, Check, run_suite


@pytest.mark.parametrize("name", SUITES)
def test_suite_passes(name):
    checks = run_suite(name)
    assert checks
    failed = [c.line() for c in checks if not c.passed]
    assert not failed, failed


def test_check_line_format():
    assert Check("x", 2.0, 1.0).line().startswith("FAIL x")
    assert Check("x", 0.5, 1.0).passed
