"""标量特殊函数与求积规则测试"""

import math

import mpmath
import numpy as np
import pytest
from scipy import special

from kernels.quadrature import gauss_jacobi_interval, gauss_legendre_interval
from kernels.scalar import (
    beta_integral,
    beta_verify,
    chp_eval,
    erf,
    kummer_m,
    kummer_m_detailed,
    pochhammer,
)
from utils.errors import DomainError

EPS = np.finfo(float).eps


# ==================== Pochhammer ====================

def test_pochhammer_small_values():
    assert pochhammer(0.5, 0) == 1.0
    assert pochhammer(0.5, 3) == pytest.approx(1.875, rel=1e-15)
    assert pochhammer(1.0, 5) == 120.0


def test_pochhammer_vanishes_past_nonpositive_integer():
    assert pochhammer(-3.0, 3) == -6.0
    assert pochhammer(-3.0, 4) == 0.0
    assert pochhammer(-3.0, 5) == 0.0
    assert pochhammer(-3.0, 70) == 0.0


def test_pochhammer_large_n_uses_log_gamma():
    assert pochhammer(2.5, 100) == pytest.approx(float(mpmath.rf(2.5, 100)), rel=1e-12)
    assert pochhammer(-70.0, 70) == pytest.approx(math.factorial(70), rel=1e-12)
    assert pochhammer(-2.5, 80) == pytest.approx(float(mpmath.rf(-2.5, 80)), rel=1e-12)


def test_pochhammer_product_rule(rng):
    for _ in range(100):
        x = rng.uniform(-5.0, 5.0)
        if abs(x - round(x)) < 0.01:
            continue
        m, n = (int(v) for v in rng.integers(0, 21, size=2))
        whole = pochhammer(x, m + n)
        assert pochhammer(x, m) * pochhammer(x + m, n) == pytest.approx(whole, rel=1e-12)


def test_pochhammer_rejects_negative_count():
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


# ==================== Beta / erf ====================

def test_beta_integral_closed_form():
    assert beta_integral(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-15)
    with pytest.raises(DomainError):
        beta_integral(0.0, 1.0)


@pytest.mark.parametrize("p, q", [(0.3, 4.5), (1.0, 1.0), (7.5, 0.2), (2.2, 3.3)])
def test_beta_verify_quadrature(p, q):
    closed, quad = beta_verify(p, q)
    assert quad == pytest.approx(closed, rel=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_beta_verify_seeded_sweep(seed):
    rng = np.random.default_rng(seed)
    for p, q in rng.uniform(0.1, 8.0, size=(30, 2)):
        closed, quad = beta_verify(p, q)
        assert abs(quad - closed) <= 1e-12 * abs(closed)


def test_beta_verify_rejects_nonpositive():
    with pytest.raises(DomainError):
        beta_verify(0.0, 2.0)


def test_erf_reference_values():
    assert erf(0.0) == 0.0
    assert erf(1.0) == pytest.approx(0.8427007929497149, abs=1e-15)
    assert erf(-1.0) == -erf(1.0)
    assert abs(erf(6.0) - 1.0) <= 1e-14


# ==================== Kummer M ====================

def test_kummer_special_cases():
    assert kummer_m(0.3, 1.7, 0.0) == 1.0
    assert kummer_m(1.0, 1.0, 0.7) == pytest.approx(math.exp(0.7), rel=1e-15)
    z = 1.3
    assert kummer_m(-2.0, 1.0, z) == pytest.approx(1.0 - 2.0 * z + 0.5 * z * z, rel=1e-14)


def test_kummer_transform_far_negative():
    # M(1, 2, z) = (e^z − 1)/z
    z = -30.0
    assert kummer_m(1.0, 2.0, z) == pytest.approx((math.exp(z) - 1.0) / z, rel=1e-13)


def test_kummer_against_mpmath(rng):
    for a, b, z in zip(rng.uniform(-5, 5, 60), rng.uniform(0.2, 5, 60), rng.uniform(-10, 10, 60)):
        res = kummer_m_detailed(a, b, z)
        ref = float(mpmath.hyp1f1(a, b, z))
        assert abs(res.value - ref) <= 1e-12 * abs(ref) + 64.0 * EPS * res.abs_sum


def test_kummer_rejects_nonpositive_integer_b():
    with pytest.raises(DomainError):
        kummer_m(0.5, -2.0, 0.3)


# ==================== 合流超几何多项式 ====================

def test_chp_first_kind_by_hand():
    # F_2(1.5; z) = z² − 5z + 15/4
    for z in (-1.0, 0.0, 0.7, 2.0):
        assert chp_eval("first", 2, 1.5, z) == pytest.approx(z * z - 5.0 * z + 3.75, rel=1e-14, abs=1e-14)


@pytest.mark.parametrize("degree", [0, 1, 3, 6])
@pytest.mark.parametrize("gamma", [0.5, 1.0, 1.5])
def test_chp_matches_generalized_laguerre(degree, gamma):
    z = 0.9
    first = math.factorial(degree) * special.eval_genlaguerre(degree, gamma - 1.0, z)
    second = math.factorial(degree) * special.eval_genlaguerre(degree, 1.0 - gamma, z)
    assert chp_eval("first", degree, gamma, z) == pytest.approx(first, rel=1e-12, abs=1e-12)
    assert chp_eval("second", degree, gamma, z) == pytest.approx(second, rel=1e-12, abs=1e-12)


def test_chp_at_zero_is_pochhammer():
    assert chp_eval("first", 4, 1.5, 0.0) == pochhammer(1.5, 4)
    assert chp_eval("second", 3, 0.5, 0.0) == pochhammer(1.5, 3)


def test_chp_domain_errors():
    with pytest.raises(DomainError):
        chp_eval("first", -1, 1.5, 0.2)
    with pytest.raises(DomainError):
        chp_eval("first", 2, 0.0, 0.2)
    with pytest.raises(DomainError):
        chp_eval("second", 2, 2.0, 0.2)
    with pytest.raises(DomainError):
        chp_eval("third", 2, 1.5, 0.2)


# ==================== 求积规则 ====================

def test_gauss_jacobi_absorbs_endpoint_power():
    t, w = gauss_jacobi_interval(20, 0.5, 0.0)
    assert np.dot(w, t ** 2) == pytest.approx(1.0 / 3.5, rel=1e-14)
    t, w = gauss_jacobi_interval(20, 0.0, -0.5, 0.5, 1.0)
    # ∫_{1/2}^1 (1−t)^{−1/2} dt = √2
    assert np.sum(w) == pytest.approx(math.sqrt(2.0), rel=1e-14)


def test_gauss_jacobi_rejects_nonintegrable_power():
    with pytest.raises(DomainError):
        gauss_jacobi_interval(10, -1.0, 0.0)


def test_gauss_legendre_polynomial():
    t, w = gauss_legendre_interval(10, 0.0, 2.0)
    assert np.dot(w, t ** 3) == pytest.approx(4.0, rel=1e-14)
