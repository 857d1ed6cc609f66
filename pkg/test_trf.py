"""3TRF 嵌套级数测试"""

import pytest
from scipy.special import gamma as gamma_fn

from core.frobenius import eval_series, frobenius_coeffs, graded_frobenius_coeffs
from core.params import GchParams
from kernels.scalar import chp_eval
from trf.ladder import (
    TerminationLadder,
    TrfTruncation,
    ladder_consistency,
    ladder_omegas,
)
from trf.series import (
    a_factor,
    b_factor,
    infinite_normalization,
    nested_tuple_count,
    qw_rw_eval,
    table_cell_count,
    trf_coefficients,
    trf_coefficients_infinite,
    trf_coefficients_polynomial,
    trf_infinite_eval,
    trf_polynomial_eval,
    x_power,
)
from utils.errors import DomainError, LadderError, PoleError, TrfSizeError

P_REF = GchParams(mu=-2.0, eps=0.4, nu=1.6, omega_cap=1.1, omega_low=0.7)


# ==================== 阶梯与截断 ====================

def test_ladder_validation():
    assert TerminationLadder.parse("1, 1,2").betas == (1, 1, 2)
    with pytest.raises(LadderError):
        TerminationLadder((2, 1))
    with pytest.raises(LadderError):
        TerminationLadder((-1, 0))
    with pytest.raises(LadderError):
        TerminationLadder(())
    with pytest.raises(LadderError):
        TerminationLadder.parse("1,a")


def test_truncation_validation():
    with pytest.raises(DomainError):
        TrfTruncation(n_max=-1)
    with pytest.raises(DomainError):
        TrfTruncation(inner_max=0)


def test_ladder_omegas():
    assert ladder_omegas((2, 2, 3), -2.0, 0.0) == pytest.approx((8.0, 10.0, 16.0))


def test_ladder_consistency_single_omega():
    p = GchParams(mu=-2.0, eps=0.3, nu=2.0, omega_cap=8.0, omega_low=1.0)
    assert ladder_consistency(p, 0.0, 1).consistent
    report = ladder_consistency(p, 0.0, 3)
    assert report.values == pytest.approx((2.0, 1.5, 1.0))
    assert not report.consistent


# ==================== 有理因子 ====================

def test_rational_factors():
    assert a_factor(0, 0, 1.5, 0.0, 0.8) == pytest.approx(0.4 / (0.5 * 1.0))
    assert a_factor(0, 0, 1.5, 0.0, None) == pytest.approx(1.0 / 0.5)
    assert b_factor(0, 0, 1.5, 0.0, -2.0) == pytest.approx(-2.0 / 1.5)
    with pytest.raises(PoleError):
        a_factor(0, 0, 0.5, 0.0, 0.8)
    with pytest.raises(PoleError):
        b_factor(0, 0, 0.0, 0.0, 1.0)


def test_nested_tuple_count():
    # 单层：cap+1 个；两层 caps (1,1)：2 + 3
    assert nested_tuple_count([3]) == 4
    assert nested_tuple_count([1, 1]) == 5
    assert table_cell_count([1, 1]) == 4
    assert table_cell_count([40] * 13) == 533


def test_infinite_branch_budgets_table_cells():
    # (12, 40) 与默认截断的指标组数都超过 1e8，但转移表只有几百个格点
    assert nested_tuple_count([40] * 13) > 10 ** 8
    default = TrfTruncation()
    value = trf_infinite_eval(P_REF, 0.0, 0.25, default).value
    ref = eval_series(frobenius_coeffs(P_REF, 0.0, 40), 0.25).value
    assert value == pytest.approx(ref, rel=1e-9)
    coeffs = trf_coefficients_infinite(P_REF, 0.0, TrfTruncation(n_max=20, inner_max=10), 20)
    assert list(coeffs[:3]) == pytest.approx(list(frobenius_coeffs(P_REF, 0.0, 2).coeffs), rel=1e-12)


def test_size_cap():
    with pytest.raises(TrfSizeError):
        trf_infinite_eval(P_REF, 0.0, 0.2, TrfTruncation(n_max=0, inner_max=10 ** 8))
    # 多项式分支仍按嵌套指标组数限制
    with pytest.raises(TrfSizeError):
        trf_polynomial_eval(TerminationLadder((60,) * 9), 1.5, 0.0, 0.8, 0.5, -0.25, 0.1,
                            TrfTruncation(n_max=8, inner_max=60))


# ==================== 无穷级数分支 ====================

def test_infinite_branch_matches_recurrence():
    value = trf_infinite_eval(P_REF, 0.0, 0.25, TrfTruncation(n_max=12, inner_max=40)).value
    ref = eval_series(frobenius_coeffs(P_REF, 0.0, 40), 0.25).value
    assert value == pytest.approx(ref, rel=1e-9)


def test_infinite_coefficients_match_recurrence():
    coeffs = trf_coefficients_infinite(P_REF, 0.0, TrfTruncation(n_max=12, inner_max=6), 12)
    ref = frobenius_coeffs(P_REF, 0.0, 12).coeffs
    for got, want in zip(coeffs, ref):
        assert got == pytest.approx(want, rel=1e-10, abs=1e-14)


def test_infinite_second_kind():
    p = GchParams(mu=-2.0, eps=0.4, nu=0.6, omega_cap=1.1, omega_low=0.7)
    lam = 1.0 - p.nu
    value = trf_infinite_eval(p, lam, 0.3, TrfTruncation(n_max=12, inner_max=40)).value
    ref = eval_series(frobenius_coeffs(p, lam, 40), 0.3).value
    assert value == pytest.approx(ref, rel=1e-9)


def test_infinite_coupling_limit():
    p = GchParams(mu=-2.0, eps=0.0, nu=1.5, omega_cap=1.0, omega_low=0.0, eps_omega=-0.6)
    value = trf_infinite_eval(p, 0.0, 0.3, TrfTruncation(n_max=10, inner_max=40)).value
    ref = eval_series(frobenius_coeffs(p, 0.0, 40), 0.3).value
    assert value == pytest.approx(ref, rel=1e-9)


def test_infinite_eps_zero_is_kummer():
    p = GchParams(mu=-2.0, eps=0.0, nu=2.0, omega_cap=3.0, omega_low=7.0)
    value = trf_infinite_eval(p, 0.0, 0.6, TrfTruncation(n_max=4, inner_max=60))
    assert value.level_sums[1:] == (0.0, 0.0, 0.0, 0.0)
    assert value.value == pytest.approx(eval_series(frobenius_coeffs(p, 0.0, 40), 0.6).value, rel=1e-12)


def test_infinite_normalization():
    p = GchParams(mu=-2.0, eps=0.4, nu=1.5, omega_cap=1.0, omega_low=0.7)
    assert infinite_normalization("first", p) == pytest.approx(gamma_fn(1.5) / gamma_fn(1.25))
    assert infinite_normalization("second", p) == pytest.approx(gamma_fn(1.25) / gamma_fn(0.75))


# ==================== 多项式分支 ====================

def test_polynomial_coefficients_match_graded_recurrence():
    p = GchParams(mu=-2.0, eps=0.3, nu=2.0, omega_cap=8.0, omega_low=1.0)
    ladder = TerminationLadder((2, 2, 3, 3, 4))
    got = trf_coefficients_polynomial(ladder, p, 0.0, TrfTruncation(n_max=4, inner_max=4), 8)
    ref = graded_frobenius_coeffs(p, 0.0, 8, ladder_omegas(ladder.betas, p.mu, 0.0)).total.coeffs
    for g, r in zip(got, ref):
        assert g == pytest.approx(r, rel=1e-10, abs=1e-14)


def test_polynomial_n0_is_chp():
    for kind, gamma, beta in (("first", 1.5, 3), ("first", 0.7, 2), ("second", 0.75, 2)):
        z = 0.45
        value = qw_rw_eval(kind, TerminationLadder((beta,), kind), gamma, 0.8, z, 0.3,
                           TrfTruncation(n_max=0)).value
        expected = chp_eval(kind, beta, gamma, z)
        if kind == "second":
            expected *= z ** (1.0 - gamma)
        assert value == pytest.approx(expected, rel=1e-13)


def test_polynomial_requires_long_enough_ladder():
    with pytest.raises(DomainError):
        trf_polynomial_eval(TerminationLadder((1,)), 1.5, 0.0, 0.8, 0.5, 0.25, 0.25, TrfTruncation(n_max=1))


def test_coefficient_dispatch():
    trunc = TrfTruncation(n_max=2, inner_max=2)
    assert trf_coefficients("infinite", P_REF, 0.0, trunc, 4) == trf_coefficients_infinite(P_REF, 0.0, trunc, 4)
    with pytest.raises(DomainError):
        trf_coefficients("polynomial", P_REF, 0.0, trunc, 4)
    with pytest.raises(DomainError):
        trf_coefficients("other", P_REF, 0.0, trunc, 4)
    with pytest.raises(DomainError):
        trf_coefficients_infinite(P_REF, 0.0, trunc, 7)


def test_x_power_domain():
    assert x_power(-0.5, 0.0) == 1.0
    assert x_power(-0.5, -1.0) == -2.0
    with pytest.raises(DomainError):
        x_power(-0.5, 0.5)
    with pytest.raises(DomainError):
        x_power(0.0, -1.0)


def test_rw_requires_positive_z():
    with pytest.raises(DomainError):
        qw_rw_eval("second", TerminationLadder((1,), "second"), 0.75, 0.8, -0.2, 0.1, TrfTruncation(n_max=0))
