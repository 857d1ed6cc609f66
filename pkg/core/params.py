"""
GCH 方程参数模型

x y'' + (μx² + εx + ν) y' + (Ωx + εω) y = 0

派生量：γ = (1+ν)/2，指标根 λ ∈ {0, 1−ν}，z = −μx²/2，ε̃ = −εx/2。
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from utils.errors import DegenerateRootError, DomainError
from utils.logger_config import get_logger

logger = get_logger(__name__)

NEAR_DEGENERATE_TOL = 1e-8
ROOT_CHECK_TOL = 1e-12


# ==================== 数据类定义 ====================

@dataclass(frozen=True)
class GchParams:
    """GCH 方程的五个系数"""
    mu: float  # μ
    eps: float  # ε
    nu: float  # ν
    omega_cap: float  # Ω
    omega_low: float  # ω
    eps_omega: Optional[float] = None  # 显式给定的乘积 εω；ε=0 时用于耦合极限

    def __post_init__(self):
        for name in ("mu", "eps", "nu", "omega_cap", "omega_low"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.eps_omega is not None:
            object.__setattr__(self, "eps_omega", float(self.eps_omega))

    @property
    def coupling_product(self) -> float:
        """常数项系数 εω"""
        if self.eps_omega is not None:
            return self.eps_omega
        return self.eps * self.omega_low

    @property
    def coupling_limit(self) -> bool:
        """ε=0 而 εω≠0：A 因子分子退化为 1"""
        return self.eps == 0.0 and self.eps_omega is not None and self.eps_omega != 0.0

    @property
    def gamma(self) -> float:
        return 0.5 * (1.0 + self.nu)

    def require_mu(self, what: str = "该运算"):
        if self.mu == 0.0:
            raise DomainError(f"{what}需要 μ ≠ 0", module="gch-core")


@dataclass(frozen=True)
class BchCanonicalParams:
    """双合流 Heun 方程标准形参数 (α, β, γ, δ)"""
    alpha: float
    beta: float
    gamma_c: float
    delta: float


@dataclass(frozen=True)
class IndicialRoots:
    """x=0 处的指标根"""
    first: float
    second: float
    degenerate: bool  # ν = 1
    near_degenerate: bool  # |1−ν| < 1e-8


@dataclass(frozen=True)
class DerivedParams:
    """γ、λ 以及 x ↦ z, ε̃ 映射"""
    params: GchParams
    lam: float

    @property
    def gamma(self) -> float:
        return self.params.gamma

    def z_of_x(self, x: float) -> float:
        return -0.5 * self.params.mu * x * x

    def eps_tilde_of_x(self, x: float) -> float:
        return -0.5 * self.params.eps * x

    def coupling(self, x: float) -> Tuple[float, Optional[float]]:
        """
        3TRF 的 ε̃ 与 A 因子中的 ω

        Returns:
            (ε̃, ω)；耦合极限下返回 (−(εω)x/4, None)，表示 A 因子分子取 1
        """
        p = self.params
        if p.coupling_limit:
            return -0.25 * p.eps_omega * x, None
        if p.eps == 0.0:
            return 0.0, p.omega_low
        return self.eps_tilde_of_x(x), p.coupling_product / p.eps


# ==================== 指标根 ====================

def indicial_roots(p: GchParams) -> IndicialRoots:
    """返回 (0, 1−ν)，ν=1 时标记重根"""
    second = 1.0 - p.nu
    return IndicialRoots(
        first=0.0,
        second=second,
        degenerate=(p.nu == 1.0),
        near_degenerate=abs(second) < NEAR_DEGENERATE_TOL,
    )


def select_root(p: GchParams, kind: str) -> float:
    """按类别选指标根：first → 0，second → 1−ν"""
    roots = indicial_roots(p)
    if kind == "first":
        return roots.first
    if kind != "second":
        raise DomainError(f"未知的解类别: {kind}", module="gch-core")
    if roots.degenerate:
        raise DegenerateRootError("ν=1 时指标根重合 (λ=1−ν=0)，第二类解不存在")
    if roots.near_degenerate:
        logger.warning(f"指标根接近重合: |1−ν|={abs(roots.second):.3e}")
    return roots.second


def derive(p: GchParams, lam: float) -> DerivedParams:
    """构造派生参数并校验 λ(λ−1+ν) = 0"""
    if abs(lam * (lam - 1.0 + p.nu)) > ROOT_CHECK_TOL * max(1.0, abs(lam)):
        raise DomainError(f"λ={lam} 不是指标根 (0 或 1−ν={1.0 - p.nu})", module="gch-core")
    return DerivedParams(p, float(lam))


# ==================== BCH 映射 ====================

def bch_to_gch(b: BchCanonicalParams) -> GchParams:
    """
    BCH 标准形 → GCH：
    μ=−2, ε=−β, ν=1+α, Ω=γ−α−2, ω=(δ/β+1+α)/2
    """
    if b.beta == 0.0:
        raise DomainError("β=0 时 ω 的映射无定义", module="gch-core")
    return GchParams(
        mu=-2.0,
        eps=-b.beta,
        nu=1.0 + b.alpha,
        omega_cap=b.gamma_c - b.alpha - 2.0,
        omega_low=0.5 * (b.delta / b.beta + 1.0 + b.alpha),
    )


def bch_residual(b: BchCanonicalParams, y: float, y1: float, y2: float, x: float) -> float:
    """BCH 标准形残差 x y'' + (1+α−βx−2x²) y' + ((γ−α−2)x − (δ+β(1+α))/2) y"""
    return (x * y2
            + (1.0 + b.alpha - b.beta * x - 2.0 * x * x) * y1
            + ((b.gamma_c - b.alpha - 2.0) * x - 0.5 * (b.delta + b.beta * (1.0 + b.alpha))) * y)
