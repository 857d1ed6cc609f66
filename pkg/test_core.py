"""GCH 参数、Frobenius 递推与残差测试"""

import pytest

from core.frobenius import (
    eval_series,
    eval_series_derivatives,
    frobenius_coeffs,
    graded_frobenius_coeffs,
    ode_residual,
    series_residual,
)
from core.params import (
    BchCanonicalParams,
    GchParams,
    bch_residual,
    bch_to_gch,
    derive,
    indicial_roots,
    select_root,
)
from kernels.scalar import kummer_m
from utils.errors import DegenerateRootError, DomainError, ResonanceError


def _params(**kw):
    base = dict(mu=-2.0, eps=0.4, nu=1.6, omega_cap=1.1, omega_low=0.7)
    base.update(kw)
    return GchParams(**base)


# ==================== 参数 ====================

def test_indicial_roots_and_degeneracy():
    roots = indicial_roots(_params(nu=2.0))
    assert (roots.first, roots.second) == (0.0, -1.0)
    assert not roots.degenerate
    assert indicial_roots(_params(nu=1.0)).degenerate
    near = indicial_roots(_params(nu=1.0 + 1e-10))
    assert near.near_degenerate and not near.degenerate


def test_select_root():
    assert select_root(_params(), "first") == 0.0
    assert select_root(_params(nu=2.0), "second") == -1.0
    with pytest.raises(DegenerateRootError):
        select_root(_params(nu=1.0), "second")
    with pytest.raises(DomainError):
        select_root(_params(), "third")


def test_derive_rejects_non_root():
    with pytest.raises(DomainError):
        derive(_params(), 0.5)
    dp = derive(_params(), 0.0)
    assert dp.z_of_x(0.5) == pytest.approx(0.25)
    assert dp.eps_tilde_of_x(0.5) == pytest.approx(-0.1)
    eps_tilde, omega = dp.coupling(0.5)
    assert eps_tilde == pytest.approx(-0.1)
    assert omega == pytest.approx(0.7)


def test_coupling_limit():
    p = GchParams(mu=-2.0, eps=0.0, nu=1.5, omega_cap=1.0, omega_low=0.0, eps_omega=-0.6)
    assert p.coupling_limit
    assert p.coupling_product == -0.6
    eps_tilde, omega = derive(p, 0.0).coupling(0.4)
    assert eps_tilde == pytest.approx(0.06)
    assert omega is None


def test_require_mu():
    with pytest.raises(DomainError):
        _params(mu=0.0).require_mu()


# ==================== 递推 ====================

def test_frobenius_zero_order():
    assert frobenius_coeffs(_params(), 0.0, 0).coeffs == (1.0,)
    with pytest.raises(DomainError):
        frobenius_coeffs(_params(), 0.0, -1)


def test_frobenius_first_two_coefficients():
    p = _params()
    c = frobenius_coeffs(p, 0.0, 2).coeffs
    c1 = -p.eps * p.omega_low / p.nu
    c2 = (-(p.eps + p.eps * p.omega_low) * c1 - p.omega_cap) / (2.0 * (1.0 + p.nu))
    assert c[1] == pytest.approx(c1, rel=1e-15)
    assert c[2] == pytest.approx(c2, rel=1e-14)


def test_frobenius_kummer_reduction():
    p = GchParams(mu=-2.0, eps=0.0, nu=2.0, omega_cap=3.0, omega_low=7.0)
    value = eval_series(frobenius_coeffs(p, 0.0, 40), 0.6).value
    assert value == pytest.approx(kummer_m(-0.75, 1.5, 0.36), rel=1e-12)


def test_frobenius_resonance_names_index():
    with pytest.raises(ResonanceError) as info:
        frobenius_coeffs(_params(nu=-1.0), 0.0, 5)
    assert info.value.index == 2


def test_graded_recurrence_reduces_to_plain():
    p = _params()
    plain = frobenius_coeffs(p, 0.0, 12).coeffs
    graded = graded_frobenius_coeffs(p, 0.0, 12, [p.omega_cap] * 13)
    assert graded.total.coeffs == pytest.approx(plain, rel=1e-13, abs=1e-15)
    assert graded.by_level.shape == (13, 13)


def test_eval_series_domain():
    p = _params(nu=0.5)
    sc = frobenius_coeffs(p, 0.5, 10)
    with pytest.raises(DomainError):
        eval_series(sc, -0.2)


def test_series_residual_is_small(rng):
    for _ in range(20):
        mu, eps, nu, omega_cap, omega_low = rng.uniform(-3.0, 3.0, size=5)
        if abs(nu - round(nu)) < 0.05 and nu <= 0.5:
            continue
        p = GchParams(mu, eps, nu, omega_cap, omega_low)
        sc = frobenius_coeffs(p, 0.0, 40)
        for x in (-0.3, -0.1, 0.05, 0.2, 0.3):
            residual, y = series_residual(sc, x)
            assert abs(residual) <= 1e-9 * max(1.0, abs(y))


def test_second_kind_series_residual():
    p = _params(nu=0.4)
    sc = frobenius_coeffs(p, 0.6, 40)
    residual, y = series_residual(sc, 0.25)
    assert abs(residual) <= 1e-9 * max(1.0, abs(y))


# ==================== BCH ====================

def test_bch_map_and_residual_agree():
    b = BchCanonicalParams(alpha=0.5, beta=1.0, gamma_c=2.0, delta=0.3)
    p = bch_to_gch(b)
    assert (p.mu, p.eps, p.nu, p.omega_cap) == (-2.0, -1.0, 1.5, -0.5)
    assert p.omega_low == pytest.approx(0.9)
    for y, y1, y2, x in ((1.0, 0.2, -0.3, 0.4), (-0.5, 1.5, 2.0, 1.2)):
        assert ode_residual(p, y, y1, y2, x) == pytest.approx(bch_residual(b, y, y1, y2, x), abs=1e-14)


def test_bch_solution_through_map():
    b = BchCanonicalParams(alpha=0.3, beta=0.8, gamma_c=1.7, delta=-0.4)
    p = bch_to_gch(b)
    y, y1, y2 = eval_series_derivatives(frobenius_coeffs(p, 0.0, 40), 0.25)
    assert abs(bch_residual(b, y, y1, y2, 0.25)) <= 1e-9 * max(1.0, abs(y))


def test_bch_map_requires_beta():
    with pytest.raises(DomainError):
        bch_to_gch(BchCanonicalParams(alpha=0.5, beta=0.0, gamma_c=2.0, delta=0.3))
