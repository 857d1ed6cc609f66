"""
Frobenius 递推（独立参照解）与 ODE 残差

c_m (m+λ)(m+λ−1+ν) = −(ε(m−1+λ) + εω) c_{m−1} − (μ(m−2+λ) + Ω) c_{m−2}
"""

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from utils.errors import DomainError, ResonanceError
from utils.summation import KahanAccumulator
from .params import GchParams

RESONANCE_TOL = 1e-12
DEFAULT_TERMS = 40


# ==================== 数据类定义 ====================

@dataclass(frozen=True)
class SeriesCoeffs:
    """y(x) = Σ c_n x^{n+λ} 的系数 c_0..c_N"""
    lam: float
    coeffs: Tuple[float, ...]
    params: GchParams

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class SeriesValue:
    """级数取值与截断尾项估计"""
    value: float
    tail: float


@dataclass(frozen=True)
class GradedCoeffs:
    """按 ε 步数 k 分层的系数：by_level[k, m] 为恰含 k 次 ε 步的贡献"""
    total: SeriesCoeffs
    by_level: np.ndarray = field(repr=False)


def _denominator(p: GchParams, lam: float, m: int) -> float:
    d = (m + lam) * (m + lam - 1.0 + p.nu)
    if abs(d) < RESONANCE_TOL:
        raise ResonanceError(f"递推在 m={m} 处共振: (m+λ)(m+λ−1+ν)={d:.3e}", index=m)
    return d


# ==================== 递推 ====================

def frobenius_coeffs(p: GchParams, lam: float, N: int = DEFAULT_TERMS) -> SeriesCoeffs:
    """c_0=1 起按三项递推生成 c_0..c_N"""
    if N < 0:
        raise DomainError(f"截断阶 N 必须非负，收到 {N}", module="gch-core")
    coupling = p.coupling_product
    c = [1.0]
    for m in range(1, N + 1):
        d = _denominator(p, lam, m)
        prev1 = c[m - 1]
        prev2 = c[m - 2] if m >= 2 else 0.0
        num = -(p.eps * (m - 1 + lam) + coupling) * prev1 - (p.mu * (m - 2 + lam) + p.omega_cap) * prev2
        c.append(num / d)
    return SeriesCoeffs(float(lam), tuple(c), p)


def graded_frobenius_coeffs(p: GchParams,
                            lam: float,
                            N: int,
                            level_omegas: Sequence[float]) -> GradedCoeffs:
    """
    分层递推：第 k 层的 x² 步使用 Ω_k

    len(level_omegas)=K+1 决定最高层 K，多于 K 次 ε 步的路径被舍去。
    level_omegas 全部等于 Ω 且 K ≥ N 时与 frobenius_coeffs 完全一致；
    取 Ω_k = −μ(2β_k+k+λ) 时给出多项式 3TRF 分支的系数。
    """
    if N < 0:
        raise DomainError(f"截断阶 N 必须非负，收到 {N}", module="gch-core")
    omegas = [float(w) for w in level_omegas]
    if not omegas:
        raise DomainError("level_omegas 不能为空", module="gch-core")
    K = len(omegas) - 1
    coupling = p.coupling_product
    d = np.zeros((K + 1, N + 1))
    d[0, 0] = 1.0
    for m in range(1, N + 1):
        den = _denominator(p, lam, m)
        a_step = -(p.eps * (m - 1 + lam) + coupling) / den
        for k in range(0, min(K, m) + 1):
            value = 0.0
            if k >= 1:
                value += a_step * d[k - 1, m - 1]
            if m >= 2:
                value += -(p.mu * (m - 2 + lam) + omegas[k]) / den * d[k, m - 2]
            d[k, m] = value
    total = tuple(float(v) for v in d.sum(axis=0))
    return GradedCoeffs(SeriesCoeffs(float(lam), total, p), d)


# ==================== 求值 ====================

def _check_point(lam: float, x: float):
    if not float(lam).is_integer() and x <= 0.0:
        raise DomainError(f"λ={lam} 非整数时要求 x > 0，收到 x={x}", module="gch-core")
    if float(lam).is_integer() and lam < 0 and x == 0.0:
        raise DomainError(f"λ={lam} 为负整数时 x=0 处无定义", module="gch-core")


def _power(x: float, e: float) -> float:
    if float(e).is_integer():
        return float(x) ** int(e)
    return float(x) ** e


def eval_series(sc: SeriesCoeffs, x: float) -> SeriesValue:
    """Σ c_n x^{n+λ}，补偿求和；尾项估计 2|c_N x^{N+λ}|"""
    _check_point(sc.lam, x)
    acc = KahanAccumulator(0.0)
    power = 1.0
    last = 0.0
    for c in sc.coeffs:
        last = c * power
        acc.add(last)
        power *= x
    scale = _power(x, sc.lam)
    return SeriesValue(float(acc.value * scale), float(2.0 * abs(last * scale)))


def eval_series_derivatives(sc: SeriesCoeffs, x: float) -> Tuple[float, float, float]:
    """逐项求导，返回 (y, y', y'')"""
    _check_point(sc.lam, x)
    acc0, acc1, acc2 = KahanAccumulator(0.0), KahanAccumulator(0.0), KahanAccumulator(0.0)
    for n, c in enumerate(sc.coeffs):
        e = n + sc.lam
        acc0.add(c * _power(x, e))
        if e != 0.0:
            acc1.add(c * e * _power(x, e - 1.0))
            if e != 1.0:
                acc2.add(c * e * (e - 1.0) * _power(x, e - 2.0))
    return float(acc0.value), float(acc1.value), float(acc2.value)


def ode_residual(p: GchParams, y: float, y1: float, y2: float, x: float) -> float:
    """x y'' + (μx²+εx+ν) y' + (Ωx+εω) y"""
    return (x * y2
            + (p.mu * x * x + p.eps * x + p.nu) * y1
            + (p.omega_cap * x + p.coupling_product) * y)


def series_residual(sc: SeriesCoeffs, x: float) -> Tuple[float, float]:
    """截断级数在 x 处的残差，返回 (residual, y)"""
    y, y1, y2 = eval_series_derivatives(sc, x)
    return ode_residual(sc.params, y, y1, y2, x), y
