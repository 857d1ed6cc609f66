"""性质校验套件测试"""

import math

import pytest

from verify import SUITES, CheckResult, all_passed, check, run_suite
from utils.errors import DomainError


def test_check_treats_nan_as_failure():
    result = check("nan", [1e-16, float("nan")], 1e-12)
    assert result.max_error == math.inf
    assert not result.passed


def test_check_records_max():
    result = check("max", [1e-14, 3e-13, 2e-15], 1e-12)
    assert result.max_error == 3e-13
    assert result.passed
    assert result.gating


def test_all_passed_ignores_non_gating():
    results = [CheckResult("a", 0.0, 1.0, True), CheckResult("b", 5.0, 1.0, False, gating=False)]
    assert all_passed(results)
    assert not all_passed(results + [CheckResult("c", 2.0, 1.0, False)])


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("nonexistent")


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    results = run_suite(name, seed=0)
    assert results
    failed = [(r.name, r.max_error, r.tolerance) for r in results if r.gating and not r.passed]
    assert not failed


def test_suite_is_reproducible_per_seed():
    first = [(r.name, r.max_error) for r in run_suite("kj", seed=7)]
    second = [(r.name, r.max_error) for r in run_suite("kj", seed=7)]
    assert first == second


def test_raising_suite_becomes_failed_check(monkeypatch):
    calls = []

    def broken(rng):
        calls.append("broken")
        raise DomainError("坏参数", module="series-3trf")

    def healthy(rng):
        calls.append("healthy")
        return [CheckResult("ok", 0.0, 1e-12, True)]

    monkeypatch.setattr("verify.suites.SUITES", {"broken": broken, "healthy": healthy})
    results = run_suite("all", seed=3)
    assert calls == ["broken", "healthy"]
    assert results[0].max_error == math.inf
    assert results[0].gating and not results[0].passed
    assert "DomainError" in results[0].name
    assert not all_passed(results)
