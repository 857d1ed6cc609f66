"""
三个应用：本征值阶梯、GCH 参数映射、波函数、归一化与渐近诊断
"""

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from core.frobenius import eval_series_derivatives, frobenius_coeffs
from core.params import BchCanonicalParams, GchParams
from kernels.quadrature import gauss_legendre_interval
from kernels.scalar import erf, pochhammer
from trf.ladder import TerminationLadder, TrfTruncation
from trf.series import qw_rw_eval, trf_infinite_eval
from utils.errors import DomainError, NormalizationTailError
from utils.logger_config import StructuredLogger
from .models import ConfinementModel, OscillatorModel, QuantumDotModel, confinement_from_potential

logger = StructuredLogger(__name__)

Model = Union[OscillatorModel, ConfinementModel, QuantumDotModel]

TAIL_DECAY = 1e-12
RICHARDSON_RADII = (1e-3, 5e-4, 2.5e-4)
ASYMPTOTIC_TOLERANCE = 0.2
MEASURES = ("line", "planar")


# ==================== 数据类定义 ====================

@dataclass(frozen=True)
class RadialResidual:
    """径向方程残差（除以波函数前因子后），scale 为 max(1, |y|, |y'|, |y''|)"""
    residual: float
    scale: float


@dataclass(frozen=True)
class BoundaryReport:
    """r → 0⁺ 时 Ψ(r)/r^power 的外推值与解析值"""
    extrapolated: float
    analytic: float

    @property
    def rel_error(self) -> float:
        return abs(self.extrapolated - self.analytic) / abs(self.analytic)


@dataclass(frozen=True)
class AsymptoticReport:
    """无穷级数解与渐近式的比较（诊断，不作判定）"""
    x: float
    series: float
    asymptotic: float

    @property
    def rel_diff(self) -> float:
        return abs(self.series - self.asymptotic) / abs(self.asymptotic)

    @property
    def within_tolerance(self) -> bool:
        return self.rel_diff <= ASYMPTOTIC_TOLERANCE


def _check_level(i: int, beta: int):
    for name, v in (("i", i), ("beta", beta)):
        if int(v) != v or v < 0:
            raise DomainError(f"{name} 必须是非负整数，收到 {v}", module="physics-apps")


# ==================== 本征值 ====================

def oscillator_eigenvalue(model: OscillatorModel, i: int, beta: int) -> float:
    """λ_m = 2β + i + l_m + 1"""
    _check_level(i, beta)
    return 2.0 * beta + i + model.l_m + 1.0


def confinement_energy(model: ConfinementModel, i: int, beta: int, l: int = None) -> float:
    """E = (ħ²/2·mass)(4α_F(β + (i+l+3/2)/2) − β_F²)"""
    _check_level(i, beta)
    l = model.l if l is None else l
    return (model.hbar ** 2 / (2.0 * model.mass)) * (
        4.0 * model.alpha_F * (beta + 0.5 * (i + l + 1.5)) - model.beta_F ** 2
    )


def qdot_energy(model: QuantumDotModel, i: int, beta: int) -> float:
    """E_r = ħω(2β + i + σ|m| + 1/2) + mħω_c/2"""
    _check_level(i, beta)
    return (model.hbar * model.omega_conf * (2.0 * beta + i + model.s + 0.5)
            + 0.5 * model.m_quantum * model.hbar * model.omega_cyc)


# ==================== GCH 参数映射 ====================

def oscillator_gch_params(model: OscillatorModel, i: int, beta: int) -> GchParams:
    """x = r：μ=−1/ω，ε=1/ω，ν=2(l_m+1)，Ω=(λ_m−l_m−1)/ω，ω_GCH=l_m+1"""
    w = model.omega_c
    lam_m = oscillator_eigenvalue(model, i, beta)
    return GchParams(mu=-1.0 / w, eps=1.0 / w, nu=2.0 * (model.l_m + 1),
                     omega_cap=(lam_m - model.l_m - 1.0) / w, omega_low=model.qw_omega)


def confinement_gch_params(model: ConfinementModel, i: int, beta: int) -> GchParams:
    """
    x = r：μ=−2α_F，ε=−2β_F，ν=2(l+1)，
    Ω = β_F² + 2·mass·E/ħ² − α_F(2l+3)，ω_GCH = −mass·a/(ħ²β_F) + l + 1
    """
    energy = confinement_energy(model, i, beta)
    omega_cap = (model.beta_F ** 2 + 2.0 * model.mass * energy / model.hbar ** 2
                 - model.alpha_F * (2 * model.l + 3))
    return GchParams(mu=-2.0 * model.alpha_F, eps=-2.0 * model.beta_F, nu=2.0 * (model.l + 1),
                     omega_cap=omega_cap, omega_low=model.qw_omega)


def qdot_gch_params(model: QuantumDotModel, i: int, beta: int) -> GchParams:
    """x = ρ：μ=−2，ε=0，εω=−u，ν=a，Ω=d=ϵ̃−a（耦合极限）"""
    eps_scaled = qdot_scaled_energy(model, qdot_energy(model, i, beta))
    return GchParams(mu=-2.0, eps=0.0, nu=model.a_coef, omega_cap=eps_scaled - model.a_coef,
                     omega_low=0.0, eps_omega=-model.u)


def qdot_scaled_energy(model: QuantumDotModel, energy: float) -> float:
    """ϵ̃ = (2E_r − mħω_c)/(ħω)"""
    return (2.0 * energy - model.m_quantum * model.hbar * model.omega_cyc) / (model.hbar * model.omega_conf)


def qdot_bch_params(model: QuantumDotModel, i: int, beta: int) -> BchCanonicalParams:
    """ρF'' + (a−2ρ²)F' + (dρ−u)F = 0 的 BCH 标准形参数：α=a−1，β=0，γ_c=d+a+1，δ=2u"""
    p = qdot_gch_params(model, i, beta)
    alpha = model.a_coef - 1.0
    return BchCanonicalParams(alpha=alpha, beta=0.0, gamma_c=p.omega_cap + alpha + 2.0, delta=2.0 * model.u)


def gch_params_for(model: Model, i: int, beta: int) -> GchParams:
    if isinstance(model, OscillatorModel):
        return oscillator_gch_params(model, i, beta)
    if isinstance(model, ConfinementModel):
        return confinement_gch_params(model, i, beta)
    if isinstance(model, QuantumDotModel):
        return qdot_gch_params(model, i, beta)
    raise DomainError(f"未知的模型类型: {type(model).__name__}", module="physics-apps")


# ==================== 径向方程残差 ====================

def _mapped(y: float, y1: float, y2: float, d1: float, d2: float):
    """Ψ = P·y，d1 = P'/P，d2 = P''/P；返回 (Ψ/P, Ψ'/P, Ψ''/P)"""
    return y, y1 + d1 * y, y2 + 2.0 * d1 * y1 + d2 * y


def _series_at(p: GchParams, x: float, terms: int):
    return eval_series_derivatives(frobenius_coeffs(p, 0.0, terms), x)


def oscillator_radial_residual(model: OscillatorModel, i: int, beta: int, r: float,
                               terms: int = 80) -> RadialResidual:
    """Frobenius 解经 Ψ = r^{l+1}e^{−(r−1)²/(4ω)}y 代回径向方程"""
    w, s = model.omega_c, model.l_m + 1.0
    lam_m = oscillator_eigenvalue(model, i, beta)
    y, y1, y2 = _series_at(oscillator_gch_params(model, i, beta), r, terms)
    g1, g2 = -(r - 1.0) / (2.0 * w), -1.0 / (2.0 * w)
    d1 = s / r + g1
    psi, _, psi2 = _mapped(y, y1, y2, d1, d1 * d1 - s / (r * r) + g2)
    potential = (2.0 * lam_m + 1.0) / (2.0 * w) - (r - 1.0) ** 2 / (4.0 * w * w) - s * (s - 1.0) / (r * r)
    return RadialResidual(psi2 + potential * psi, max(1.0, abs(y), abs(y1), abs(y2)))


def confinement_radial_residual(model: ConfinementModel, i: int, beta: int, r: float,
                                terms: int = 80) -> RadialResidual:
    """Frobenius 解经 Ψ = r^{l+1}e^{−α_F r²/2 − β_F r}y 代回径向方程"""
    s = model.l + 1.0
    energy = confinement_energy(model, i, beta)
    y, y1, y2 = _series_at(confinement_gch_params(model, i, beta), r, terms)
    d1 = s / r - model.alpha_F * r - model.beta_F
    psi, _, psi2 = _mapped(y, y1, y2, d1, d1 * d1 - s / (r * r) - model.alpha_F)
    k = 2.0 * model.mass / model.hbar ** 2
    potential = (k * (energy + model.a / r - model.b * r - model.c * r * r)
                 - s * (s - 1.0) / (r * r))
    return RadialResidual(psi2 + potential * psi, max(1.0, abs(y), abs(y1), abs(y2)))


def qdot_radial_residual(model: QuantumDotModel, i: int, beta: int, rho: float,
                         terms: int = 80) -> RadialResidual:
    """
    Frobenius 解经 R = ρ^{σ|m|}e^{−ρ²/2}F 代回相对运动径向方程（变量 ρ）

    代换后 F 满足的方程中 d = ϵ̃ − (a+1)，故这里取 ϵ̃ = d + a + 1；
    与 qdot_energy 的阶梯相差常数 ħω/2。
    """
    s = model.s
    p = qdot_gch_params(model, i, beta)
    eps_scaled = p.omega_cap + model.a_coef + 1.0
    y, y1, y2 = _series_at(p, rho, terms)
    d1 = s / rho - rho
    R, R1, R2 = _mapped(y, y1, y2, d1, d1 * d1 - s / (rho * rho) - 1.0)
    residual = R2 + R1 / rho + (-s * s / (rho * rho) - rho * rho - model.u / rho + eps_scaled) * R
    return RadialResidual(residual, max(1.0, abs(y), abs(y1), abs(y2)))


# ==================== 波函数 ====================

def _default_trunc(ladder: TerminationLadder, trunc: Optional[TrfTruncation]) -> TrfTruncation:
    return trunc or TrfTruncation(n_max=len(ladder) - 1)


def wavefunction_eval(model: Model, ladder: TerminationLadder, r: float,
                      phi: Optional[float] = None,
                      trunc: Optional[TrfTruncation] = None) -> Union[float, complex]:
    """未归一化波函数：前因子 × QW；量子点给定 φ 时另乘 e^{imφ}"""
    if not r > 0.0:
        raise DomainError(f"波函数要求 r > 0，收到 r={r}", module="physics-apps")
    trunc = _default_trunc(ladder, trunc)
    qw = qw_rw_eval("first", ladder, model.gamma, model.qw_omega,
                    model.z(r), model.eps_tilde(r), trunc).value
    value = model.prefactor(r) * qw
    if phi is not None and isinstance(model, QuantumDotModel):
        return value * cmath.exp(1j * model.m_quantum * phi)
    return value


def normalize(psi: Callable[[float], float], r_max: float, nodes: int = 200,
              measure: str = "line") -> float:
    """
    返回 N 使 ∫_0^{r_max} |NΨ|² dr = 1（line）或 ∫ |NΨ|² r dr = 1（planar）
    要求 |Ψ(r_max)| ≤ 1e-12·峰值
    """
    if measure not in MEASURES:
        raise DomainError(f"未知的测度: {measure}", module="physics-apps")
    if not r_max > 0.0:
        raise DomainError(f"r_max 必须 > 0，收到 {r_max}", module="physics-apps")
    r, w = gauss_legendre_interval(nodes, 0.0, r_max)
    values = np.array([abs(psi(float(x))) for x in r])
    peak = float(values.max())
    edge = abs(psi(float(r_max)))
    if peak == 0.0:
        raise DomainError("波函数在积分区间上恒为零", module="physics-apps")
    if edge > TAIL_DECAY * peak:
        raise NormalizationTailError(
            f"波函数在 r_max={r_max} 处未衰减: |Ψ|={edge:.3e} > {TAIL_DECAY:.0e}·峰值 {peak:.3e}"
        )
    density = values ** 2 * (r if measure == "planar" else 1.0)
    integral = float(np.dot(w, density))
    return 1.0 / math.sqrt(integral)


def normalize_model(model: Model, ladder: TerminationLadder, r_max: float, nodes: int = 200,
                    trunc: Optional[TrfTruncation] = None) -> float:
    """按模型测度归一化（谐振子与禁闭势为径向线测度，量子点为平面测度）"""
    trunc = _default_trunc(ladder, trunc)
    return normalize(lambda r: wavefunction_eval(model, ladder, r, trunc=trunc) if r > 0.0 else 0.0,
                     r_max, nodes, model.measure)


def boundary_limit(model: Model, ladder: TerminationLadder,
                   trunc: Optional[TrfTruncation] = None) -> BoundaryReport:
    """Richardson 外推 Ψ(r)/r^power 于 r ∈ {1e-3, 5e-4, 2.5e-4}"""
    trunc = _default_trunc(ladder, trunc)
    f = [wavefunction_eval(model, ladder, r, trunc=trunc) / r ** model.boundary_power
         for r in RICHARDSON_RADII]
    # 步长减半：先消去一阶项，再消去二阶项
    first = [2.0 * f[1] - f[0], 2.0 * f[2] - f[1]]
    extrapolated = (4.0 * first[1] - first[0]) / 3.0
    analytic = model.boundary_constant() * pochhammer(model.gamma, ladder[0])
    return BoundaryReport(float(extrapolated), float(analytic))


# ==================== 渐近形式 ====================

def asymptotic_form(mu: float, x: float) -> float:
    """1 + √(−πμx²/2)·erf(√(−μx²/2))·exp(−μx²/2)"""
    arg = -mu * x * x
    if arg < 0.0:
        raise DomainError(f"渐近式要求 −μx² ≥ 0，收到 {arg}", module="physics-apps")
    half = 0.5 * arg
    return 1.0 + math.sqrt(math.pi * half) * erf(math.sqrt(half)) * math.exp(half)


def asymptotic_diagnostic(x: float = 1.5) -> AsymptoticReport:
    """μ=−2、ε=1e-6、ν=0.02、Ω=2μ、ω=0 的无穷级数与渐近式比较"""
    p = GchParams(mu=-2.0, eps=1e-6, nu=0.02, omega_cap=-4.0, omega_low=0.0)
    series = trf_infinite_eval(p, 0.0, x, TrfTruncation(n_max=4, inner_max=60)).value
    report = AsymptoticReport(float(x), series, asymptotic_form(p.mu, x))
    logger.info("渐近式诊断", x=x, series=report.series, asymptotic=report.asymptotic,
                rel_diff=report.rel_diff, within_tolerance=report.within_tolerance)
    return report


def qdot_asymptotic_wavefunction(model: QuantumDotModel, r: float,
                                 phi: Optional[float] = None) -> Union[float, complex]:
    """(γ̃r)^{σ|m|} e^{−(γ̃r)²/2} {1 + γ̃√π erf(γ̃r) r e^{γ̃²r²}}，给定 φ 时乘 e^{imφ}"""
    rho = model.rho(r)
    value = rho ** model.s * math.exp(-0.5 * rho * rho) * (
        1.0 + model.gamma_tilde * math.sqrt(math.pi) * erf(rho) * r * math.exp(rho * rho)
    )
    if phi is not None:
        return value * cmath.exp(1j * model.m_quantum * phi)
    return value
