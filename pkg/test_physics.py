"""量子力学应用测试"""

import cmath
import math

import pytest

from core.frobenius import ode_residual
from core.params import bch_residual
from physics import (
    ConfinementModel,
    OscillatorModel,
    QuantumDotModel,
    asymptotic_diagnostic,
    asymptotic_form,
    boundary_limit,
    confinement_energy,
    confinement_from_potential,
    confinement_radial_residual,
    gch_params_for,
    normalize,
    normalize_model,
    oscillator_eigenvalue,
    oscillator_gch_params,
    oscillator_radial_residual,
    qdot_asymptotic_wavefunction,
    qdot_bch_params,
    qdot_energy,
    qdot_gch_params,
    qdot_radial_residual,
    qdot_scaled_energy,
    wavefunction_eval,
)
from trf.ladder import TerminationLadder
from utils.errors import DomainError, NormalizationTailError


@pytest.fixture
def osc():
    return OscillatorModel(l_m=1, omega_c=1.0)


@pytest.fixture
def conf():
    return ConfinementModel.from_potential(a=1.0, b=0.5, c=0.5, l=1)


@pytest.fixture
def qdot():
    return QuantumDotModel(eff_mass=1.0, omega_conf=1.0, omega_cyc=0.5, sigma=1.0,
                           m_quantum=1, eps_inf=1.0, charge=0.5)


# ==================== 模型 ====================

def test_confinement_from_potential():
    assert confinement_from_potential(1.0, 0.5, 0.5) == pytest.approx((1.0, 0.5))
    alpha_F, beta_F = confinement_from_potential(1.0, 0.5, 4.0, mass=2.0, hbar=2.0)
    assert alpha_F == pytest.approx(2.0)
    assert beta_F == pytest.approx(0.125)


def test_model_validation():
    with pytest.raises(DomainError):
        OscillatorModel(l_m=-1, omega_c=1.0)
    with pytest.raises(DomainError):
        OscillatorModel(l_m=0, omega_c=0.0)
    with pytest.raises(DomainError):
        ConfinementModel.from_potential(a=1.0, b=0.0, c=0.5)
    with pytest.raises(DomainError):
        confinement_from_potential(1.0, 0.5, 0.0)
    with pytest.raises(DomainError):
        QuantumDotModel(eff_mass=1.0, omega_conf=1.0, omega_cyc=0.5, sigma=1.0,
                        m_quantum=0.5, eps_inf=1.0, charge=0.5)
    with pytest.raises(DomainError):
        gch_params_for("oscillator", 0, 0)


def test_qdot_derived_constants(qdot):
    assert qdot.s == 1.0
    assert qdot.gamma_tilde == 1.0
    assert qdot.u == pytest.approx(0.5)
    assert qdot.a_coef == 3.0
    assert qdot.qw_omega is None


# ==================== 本征值 ====================

def test_oscillator_ladder():
    model = OscillatorModel(l_m=0, omega_c=1.0)
    assert [oscillator_eigenvalue(model, 0, beta) for beta in range(4)] == [1.0, 3.0, 5.0, 7.0]
    with pytest.raises(DomainError):
        oscillator_eigenvalue(model, -1, 0)
    with pytest.raises(DomainError):
        oscillator_eigenvalue(model, 0, 1.5)


def test_energy_spacings(conf, qdot):
    for i in range(3):
        for beta in range(3):
            de = confinement_energy(conf, i, beta + 1) - confinement_energy(conf, i, beta)
            assert de == pytest.approx(2.0 * conf.alpha_F)
            de = qdot_energy(qdot, i, beta + 1) - qdot_energy(qdot, i, beta)
            assert de == pytest.approx(2.0)


def test_qdot_energy_and_scaled(qdot):
    energy = qdot_energy(qdot, 0, 0)
    assert energy == pytest.approx(1.75)
    assert qdot_scaled_energy(qdot, energy) == pytest.approx(3.0)


def test_qdot_params_are_coupling_limit(qdot):
    p = qdot_gch_params(qdot, 1, 2)
    assert p.mu == -2.0
    assert p.eps == 0.0
    assert p.coupling_limit
    assert p.coupling_product == pytest.approx(-qdot.u)
    assert p.nu == qdot.a_coef


def test_oscillator_params(osc):
    p = oscillator_gch_params(osc, 0, 1)
    assert p.mu == -1.0
    assert p.eps == 1.0
    assert p.nu == 4.0
    assert p.omega_cap == pytest.approx(2.0)
    assert p.omega_low == 2.0


# ==================== 径向方程 ====================

@pytest.mark.parametrize("r", [0.3, 0.8, 1.5])
@pytest.mark.parametrize("i, beta", [(0, 0), (1, 2)])
def test_radial_residuals(osc, conf, qdot, r, i, beta):
    for res in (oscillator_radial_residual(osc, i, beta, r),
                confinement_radial_residual(conf, i, beta, r),
                qdot_radial_residual(qdot, i, beta, r)):
        assert abs(res.residual) <= 1e-8 * res.scale


def test_qdot_matches_bch_form(qdot):
    p = qdot_gch_params(qdot, 1, 1)
    b = qdot_bch_params(qdot, 1, 1)
    for y, y1, y2, x in ((1.0, 0.5, -0.2, 0.7), (-1.3, 2.0, 0.4, 1.9), (0.2, -0.1, 1.5, -0.8)):
        assert ode_residual(p, y, y1, y2, x) == pytest.approx(bch_residual(b, y, y1, y2, x), abs=1e-12)


# ==================== 波函数与归一化 ====================

def test_normalize_exponential():
    assert normalize(lambda r: math.exp(-r), 40.0) == pytest.approx(math.sqrt(2.0), rel=1e-10)
    assert normalize(lambda r: math.exp(-r), 40.0, measure="planar") == pytest.approx(2.0, rel=1e-10)


def test_normalize_guards():
    with pytest.raises(NormalizationTailError):
        normalize(lambda r: math.exp(-0.1 * r), 10.0)
    with pytest.raises(DomainError):
        normalize(lambda r: math.exp(-r), 40.0, measure="volume")
    with pytest.raises(DomainError):
        normalize(lambda r: 0.0, 10.0)
    with pytest.raises(DomainError):
        normalize(lambda r: math.exp(-r), 0.0)


def test_normalize_idempotent(osc, conf, qdot):
    ladder = TerminationLadder((1, 2))
    for model, r_max in ((osc, 16.0), (conf, 10.0), (qdot, 10.0)):
        n = normalize_model(model, ladder, r_max)
        again = normalize(lambda r: n * wavefunction_eval(model, ladder, r), r_max, measure=model.measure)
        assert again == pytest.approx(1.0, abs=1e-10)


def test_wavefunction_phase(qdot):
    ladder = TerminationLadder((1, 1))
    real = wavefunction_eval(qdot, ladder, 0.5)
    assert wavefunction_eval(qdot, ladder, 0.5, phi=0.3) == pytest.approx(real * cmath.exp(0.3j))
    with pytest.raises(DomainError):
        wavefunction_eval(qdot, ladder, 0.0)


def test_boundary_behaviour(osc, conf, qdot):
    ladder = TerminationLadder((1, 2))
    for model in (osc, conf, qdot):
        assert boundary_limit(model, ladder).rel_error <= 1e-6


# ==================== 渐近形式 ====================

def test_asymptotic_form():
    assert asymptotic_form(0.0, 1.3) == 1.0
    half = 1.0
    expected = 1.0 + math.sqrt(math.pi * half) * math.erf(1.0) * math.exp(half)
    assert asymptotic_form(-2.0, 1.0) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(DomainError):
        asymptotic_form(2.0, 1.0)


def test_asymptotic_diagnostic_reports():
    report = asymptotic_diagnostic()
    assert report.x == 1.5
    assert math.isfinite(report.series)
    assert report.within_tolerance == (report.rel_diff <= 0.2)


def test_qdot_asymptotic_wavefunction(qdot):
    value = qdot_asymptotic_wavefunction(qdot, 0.4)
    expected = 0.4 * math.exp(-0.08) * (1.0 + math.sqrt(math.pi) * math.erf(0.4) * 0.4 * math.exp(0.16))
    assert value == pytest.approx(expected, rel=1e-12)
    assert abs(qdot_asymptotic_wavefunction(qdot, 0.4, phi=1.0)) == pytest.approx(value, rel=1e-12)
