import pytest

from hermfold.acceptance import (
    _timed,
    check_duality_sweep,
    check_ea,
    check_list_decodability,
    check_product_bound,
    check_rate_radius,
    check_riemann_roch,
    check_rs_comparison,
    check_small_instance,
    run_acceptance,
)


def test_timed_marks_exceptions_as_failures():
    def broken():
        raise ValueError("no such code")

    result = _timed("broken", broken)
    assert not result.passed
    assert result.detail == "error: no such code"


def test_duality_sweep_small_fields():
    passed, detail = check_duality_sweep(qs=(2, 3))
    assert passed, detail


def test_small_instance_check():
    instances = {"fold-dual": {}}
    passed, detail = check_small_instance(instances)
    assert passed, detail
    assert instances["fold-dual"]["q=2 instance"]
    assert "[[4, 1," in detail


def test_riemann_roch_small_fields():
    passed, detail = check_riemann_roch(qs=(2, 3, 4))
    assert passed, detail


def test_list_decodability_check():
    passed, detail = check_list_decodability()
    assert passed, detail
    assert "d_fold=2" in detail


def test_product_bound_check():
    passed, detail = check_product_bound({"fold-dual": {}})
    assert passed, detail


@pytest.mark.parametrize("check", [check_rate_radius, check_ea, check_rs_comparison])
def test_quick_checks(check):
    passed, detail = check()
    assert passed, detail


@pytest.mark.slow
def test_run_acceptance():
    frame = run_acceptance()
    assert len(frame) == 11
    assert frame["passed"].all(), frame[~frame["passed"]].to_string()
