"""
三个径向方程模型

每个模型给出 QW 所需的 (γ, ω, z(r), ε̃(r))、波函数前因子以及归一化测度。
ħ 与质量默认取 1。
"""

import math
from dataclasses import dataclass
from typing import Optional

from utils.errors import DomainError


def _require_positive(value: float, name: str):
    if not value > 0.0:
        raise DomainError(f"{name} 必须 > 0，收到 {value}", module="physics-apps")


def _require_nonnegative_int(value: int, name: str):
    if int(value) != value or value < 0:
        raise DomainError(f"{name} 必须是非负整数，收到 {value}", module="physics-apps")


# ==================== 旋转谐振子 ====================

@dataclass(frozen=True)
class OscillatorModel:
    """Ψ'' + {(2λ_m+1)/(2ω) − (r−1)²/(4ω²) − l_m(l_m+1)/r²}Ψ = 0"""
    l_m: int  # 转动量子数
    omega_c: float  # 耦合参数 ω

    measure = "line"

    def __post_init__(self):
        _require_nonnegative_int(self.l_m, "l_m")
        _require_positive(self.omega_c, "omega_c")

    @property
    def gamma(self) -> float:
        return self.l_m + 1.5

    @property
    def qw_omega(self) -> Optional[float]:
        return self.l_m + 1.0

    @property
    def boundary_power(self) -> float:
        return self.l_m + 1.0

    def z(self, r: float) -> float:
        return r * r / (2.0 * self.omega_c)

    def eps_tilde(self, r: float) -> float:
        return -r / (2.0 * self.omega_c)

    def prefactor(self, r: float) -> float:
        """r^{l_m+1} exp(−(r−1)²/(4ω))"""
        return r ** (self.l_m + 1) * math.exp(-(r - 1.0) ** 2 / (4.0 * self.omega_c))

    def boundary_constant(self) -> float:
        return math.exp(-1.0 / (4.0 * self.omega_c))


# ==================== 禁闭势 ====================

@dataclass(frozen=True)
class ConfinementModel:
    """Ψ'' + {(2·mass/ħ²)(E + a/r − br − cr²) − l(l+1)/r²}Ψ = 0"""
    a: float
    b: float
    c: float
    alpha_F: float
    beta_F: float
    mass: float = 1.0
    hbar: float = 1.0
    l: int = 0

    measure = "line"

    def __post_init__(self):
        _require_positive(self.mass, "mass")
        _require_positive(self.hbar, "hbar")
        _require_nonnegative_int(self.l, "l")
        if not (math.isfinite(self.alpha_F) and math.isfinite(self.beta_F)):
            raise DomainError("alpha_F、beta_F 必须有限", module="physics-apps")
        if self.beta_F == 0.0:
            raise DomainError("beta_F ≠ 0 才能定义 ω = −mass·a/(ħ²β_F) + l + 1", module="physics-apps")

    @classmethod
    def from_potential(cls, a: float, b: float, c: float, mass: float = 1.0,
                       hbar: float = 1.0, l: int = 0) -> "ConfinementModel":
        """α_F = √(2·mass·c)/ħ，β_F = mass·b/(ħ²α_F)"""
        alpha_F, beta_F = confinement_from_potential(a, b, c, mass, hbar)
        return cls(a, b, c, alpha_F, beta_F, mass, hbar, l)

    @property
    def gamma(self) -> float:
        return self.l + 1.5

    @property
    def qw_omega(self) -> Optional[float]:
        return -self.mass * self.a / (self.hbar ** 2 * self.beta_F) + self.l + 1.0

    @property
    def boundary_power(self) -> float:
        return self.l + 1.0

    def z(self, r: float) -> float:
        return self.alpha_F * r * r

    def eps_tilde(self, r: float) -> float:
        return self.beta_F * r

    def prefactor(self, r: float) -> float:
        """r^{l+1} exp(−α_F r²/2 − β_F r)"""
        return r ** (self.l + 1) * math.exp(-0.5 * self.alpha_F * r * r - self.beta_F * r)

    def boundary_constant(self) -> float:
        return 1.0


def confinement_from_potential(a: float, b: float, c: float, mass: float = 1.0,
                               hbar: float = 1.0):
    """由势参数求 (α_F, β_F)"""
    _require_positive(c, "c")
    _require_positive(mass, "mass")
    _require_positive(hbar, "hbar")
    alpha_F = math.sqrt(2.0 * mass * c) / hbar
    beta_F = mass * b / (hbar ** 2 * alpha_F)
    return alpha_F, beta_F


# ==================== 磁场中的两电子 ====================

@dataclass(frozen=True)
class QuantumDotModel:
    """
    相对运动径向方程（ρ = γ̃r）
    R'' + R'/ρ − σ²m²/ρ² R − ρ² R − u/ρ R + ϵ̃ R = 0
    """
    eff_mass: float  # 约化质量 μ
    omega_conf: float  # 约束频率 ω
    omega_cyc: float  # 回旋频率 ω_c
    sigma: float
    m_quantum: int  # 角动量量子数 m
    eps_inf: float  # 介电常数 ϵ_∞
    charge: float  # 电荷 e
    hbar: float = 1.0

    measure = "planar"

    def __post_init__(self):
        _require_positive(self.eff_mass, "eff_mass")
        _require_positive(self.omega_conf, "omega_conf")
        _require_positive(self.eps_inf, "eps_inf")
        _require_positive(self.hbar, "hbar")
        if int(self.m_quantum) != self.m_quantum:
            raise DomainError(f"m 必须是整数，收到 {self.m_quantum}", module="physics-apps")
        if self.sigma * abs(self.m_quantum) < 0.0:
            raise DomainError("σ|m| 必须非负", module="physics-apps")

    @property
    def s(self) -> float:
        """σ|m|"""
        return self.sigma * abs(self.m_quantum)

    @property
    def gamma_tilde(self) -> float:
        """γ̃ = √(μω/ħ)"""
        return math.sqrt(self.eff_mass * self.omega_conf / self.hbar)

    @property
    def u(self) -> float:
        """u = 2μe²/(ϵ_∞ħ²γ̃)"""
        return 2.0 * self.eff_mass * self.charge ** 2 / (self.eps_inf * self.hbar ** 2 * self.gamma_tilde)

    @property
    def a_coef(self) -> float:
        """a = 2σ|m| + 1"""
        return 2.0 * self.s + 1.0

    @property
    def gamma(self) -> float:
        return self.s + 1.0

    @property
    def qw_omega(self) -> Optional[float]:
        # 耦合极限：A 因子分子为 1
        return None

    @property
    def boundary_power(self) -> float:
        return self.s

    def rho(self, r: float) -> float:
        return self.gamma_tilde * r

    def z(self, r: float) -> float:
        return self.eff_mass * self.omega_conf * r * r / self.hbar

    def eps_tilde(self, r: float) -> float:
        return self.eff_mass * self.charge ** 2 * r / (2.0 * self.eps_inf * self.hbar ** 2)

    def prefactor(self, r: float) -> float:
        """(μωr²/ħ)^{σ|m|/2} exp(−μωr²/(2ħ))"""
        z = self.z(r)
        return z ** (0.5 * self.s) * math.exp(-0.5 * z)

    def boundary_constant(self) -> float:
        return (self.eff_mass * self.omega_conf / self.hbar) ** (0.5 * self.s)
