import pytest

from llolqs import verify


@pytest.mark.parametrize("suite", ["kron", "vbc", "sc", "sandwich", "ineqs"])
def test_quick_suites_pass(suite):
    results = verify.run_suites(suite, base_seed=1, instances=5)
    assert results
    bad = [r for r in results if not r.passed]
    assert not bad, "\n".join(r.line() for r in bad)


def test_derivs_suite_quick():
    results = verify.run_suites("derivs", base_seed=1, instances=5)
    bad = [r for r in results if not r.passed]
    assert not bad, "\n".join(r.line() for r in bad)


def test_ellipsoid_suite_quick():
    results = verify.run_suites("ellipsoid", base_seed=1, instances=2)
    bad = [r for r in results if not r.passed]
    assert not bad, "\n".join(r.line() for r in bad)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        verify.run_suites("bogus")


def test_check_result_line_format():
    r = verify.CheckResult("demo/check", 3, 1.5e-3, 1e-2, "<=", True)
    line = r.line()
    assert "demo/check" in line and "seed=3" in line and "PASS" in line


def test_all_selector_covers_every_suite():
    assert set(verify.SUITE_RUNNERS) == set(verify.SUITES) - {"all"}
