"""
3TRF 嵌套 Pochhammer 级数

y(x) = x^λ Σ_n ε̃^n Σ_{i_0≤…≤i_n} [有理因子乘积] z^{i_n}

嵌套和按 (层 n, 内层指标 i) 的转移表计算：
    T[0][0] = 1
    T[n][i] = T[n][i−1]·B(i−1, n)·z + T[n−1][i]·A(i, n−1)·ε̃
每个 T[n][i] 恰好是所有 i_0 ≤ … ≤ i_n = i 路径之和，前缀乘积逐层复用。
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gamma as gamma_fn

from core.params import GchParams, derive
from kernels.scalar import pochhammer
from utils.errors import DomainError, PoleError, TrfSizeError
from utils.logger_config import get_logger
from utils.summation import KahanAccumulator
from .ladder import TerminationLadder, TrfTruncation

logger = get_logger(__name__)

MAX_NESTED_TUPLES = 10 ** 8
MAX_TABLE_CELLS = 10 ** 8
POLE_TOL = 1e-14
TAIL_WARN_REL = 1e-10


# ==================== 数据类定义 ====================

@dataclass(frozen=True)
class TrfValue:
    """3TRF 求值结果"""
    value: float
    tail: float  # 内层截断尾项估计（多项式分支为 0）
    level_sums: Tuple[float, ...]  # 每层 ε̃^n 的贡献（已乘 x^λ 或前因子）


# ==================== 有理因子 ====================

def a_factor(i: int, k: int, gamma: float, lam: float, omega_low: Optional[float]) -> float:
    """
    k → k+1 层的 A 因子
    (i + k/2 + λ/2 + ω/2) / ((i + 1/2 + k/2 + λ/2)(i − 1/2 + γ + k/2 + λ/2))
    omega_low 为 None 时是耦合极限，分子取 1
    """
    shift = 0.5 * (k + lam)
    den = (i + 0.5 + shift) * (i - 0.5 + gamma + shift)
    if abs(den) < POLE_TOL:
        raise PoleError(f"A 因子分母为零: i={i}, k={k}, γ={gamma}, λ={lam}")
    num = 1.0 if omega_low is None else i + shift + 0.5 * omega_low
    return num / den


def b_factor(j: int, k: int, gamma: float, lam: float, a_k: float) -> float:
    """第 k 层的 B 因子 (j + a_k) / ((j + 1 + k/2 + λ/2)(j + γ + k/2 + λ/2))"""
    shift = 0.5 * (k + lam)
    den = (j + 1.0 + shift) * (j + gamma + shift)
    if abs(den) < POLE_TOL:
        raise PoleError(f"B 因子分母为零: j={j}, k={k}, γ={gamma}, λ={lam}")
    return (j + a_k) / den


def nested_tuple_count(caps: Sequence[int]) -> int:
    """Σ_n #{i_0 ≤ … ≤ i_n, i_k ≤ caps[k]}"""
    total = 0
    row = [1] * (caps[0] + 1)
    total += sum(row)
    for n in range(1, len(caps)):
        new_row = []
        running = 0
        for i in range(caps[n] + 1):
            if i < len(row):
                running += row[i]
            new_row.append(running)
        row = new_row
        total += sum(row)
        if total > MAX_NESTED_TUPLES:
            break
    return total


def table_cell_count(caps: Sequence[int]) -> int:
    """转移表实际计算的格点数 Σ(caps[k]+1)"""
    return sum(int(c) + 1 for c in caps)


def transfer_table(caps: Sequence[int],
                   a_of: Callable[[int, int], float],
                   b_of: Callable[[int, int], float],
                   z: float,
                   eps_tilde: float,
                   count_tuples: bool = False) -> List[np.ndarray]:
    """
    转移表 U[n][i] = T[n][i] z^i ε̃^n

    Args:
        caps: 每层内层指标上限
        a_of(i, k): k → k+1 层 A 因子
        b_of(j, k): 第 k 层 j → j+1 的 B 因子
        count_tuples: 同时限制嵌套指标组数（多项式分支，阶梯给出格点范围）
    """
    cells = table_cell_count(caps)
    if cells > MAX_TABLE_CELLS:
        raise TrfSizeError(f"转移表格点数 {cells} 超过上限 {MAX_TABLE_CELLS:.0e}")
    if count_tuples and nested_tuple_count(caps) > MAX_NESTED_TUPLES:
        raise TrfSizeError(f"嵌套求和项数超过上限 {MAX_NESTED_TUPLES:.0e}")

    rows: List[np.ndarray] = []
    for n, cap in enumerate(caps):
        row = np.zeros(cap + 1)
        prev = rows[n - 1] if n >= 1 else None
        for i in range(cap + 1):
            value = 0.0
            if i == 0 and n == 0:
                value = 1.0
            if i >= 1:
                value += row[i - 1] * b_of(i - 1, n) * z
            if prev is not None and eps_tilde != 0.0 and i < len(prev) and prev[i] != 0.0:
                value += prev[i] * a_of(i, n - 1) * eps_tilde
            row[i] = value
        rows.append(row)
    return rows


def _row_sum(row: np.ndarray) -> float:
    acc = KahanAccumulator(0.0)
    for v in row:
        acc.add(float(v))
    return float(acc.value)


def _row_tail(row: np.ndarray) -> float:
    """末项比值估计几何尾项"""
    if len(row) < 2 or row[-1] == 0.0:
        return 0.0
    if row[-2] == 0.0:
        return math.inf
    ratio = abs(row[-1] / row[-2])
    if ratio >= 1.0:
        return math.inf
    return abs(row[-1]) * ratio / (1.0 - ratio)


def x_power(x: float, lam: float) -> float:
    if lam == 0.0:
        return 1.0
    if float(lam).is_integer():
        if lam < 0 and x == 0.0:
            raise DomainError(f"λ={lam} 时 x=0 处无定义", module="series-3trf")
        return float(x) ** int(lam)
    if x <= 0.0:
        raise DomainError(f"λ={lam} 非整数时要求 x > 0，收到 x={x}", module="series-3trf")
    return float(x) ** lam


# ==================== 多项式分支 ====================

def _polynomial_rows(ladder: TerminationLadder, gamma: float, lam: float,
                     omega_low: Optional[float], z: float, eps_tilde: float,
                     trunc: TrfTruncation) -> List[np.ndarray]:
    if len(ladder) < trunc.n_max + 1:
        raise DomainError(
            f"阶梯长度 {len(ladder)} 小于 n_max+1={trunc.n_max + 1}", module="series-3trf"
        )
    caps = [ladder[k] for k in range(trunc.n_max + 1)]
    return transfer_table(
        caps,
        lambda i, k: a_factor(i, k, gamma, lam, omega_low),
        lambda j, k: b_factor(j, k, gamma, lam, -float(ladder[k])),
        z,
        eps_tilde,
        count_tuples=True,
    )


def trf_polynomial_sum(ladder: TerminationLadder, gamma: float, lam: float,
                       omega_low: Optional[float], z: float, eps_tilde: float,
                       trunc: TrfTruncation) -> TrfValue:
    """多项式分支的嵌套和（不含 x^λ 前因子，c_0 = 1）"""
    rows = _polynomial_rows(ladder, gamma, lam, omega_low, z, eps_tilde, trunc)
    sums = tuple(_row_sum(r) for r in rows)
    acc = KahanAccumulator(0.0)
    for s in sums:
        acc.add(s)
    return TrfValue(float(acc.value), 0.0, sums)


def trf_polynomial_eval(ladder: TerminationLadder, gamma: float, lam: float,
                        omega_low: Optional[float], x: float, z: float, eps_tilde: float,
                        trunc: TrfTruncation) -> TrfValue:
    """B_n 项终止的多项式 3TRF 级数，返回 x^λ·Σ"""
    inner = trf_polynomial_sum(ladder, gamma, lam, omega_low, z, eps_tilde, trunc)
    scale = x_power(x, lam)
    return TrfValue(inner.value * scale, 0.0, tuple(s * scale for s in inner.level_sums))


# ==================== 无穷级数分支 ====================

def _infinite_rows(p: GchParams, lam: float, omega_low: Optional[float],
                   z: float, eps_tilde: float, trunc: TrfTruncation) -> List[np.ndarray]:
    p.require_mu("无穷级数 3TRF")
    gamma = p.gamma
    base = p.omega_cap / (2.0 * p.mu)
    caps = [trunc.inner_max] * (trunc.n_max + 1)
    return transfer_table(
        caps,
        lambda i, k: a_factor(i, k, gamma, lam, omega_low),
        lambda j, k: b_factor(j, k, gamma, lam, base + 0.5 * (k + lam)),
        z,
        eps_tilde,
    )


def trf_infinite_eval(p: GchParams, lam: float, x: float, trunc: TrfTruncation) -> TrfValue:
    """无穷级数 3TRF，c_0 = 1，返回 x^λ·Σ_{n≤n_max} ε̃^n(…)"""
    dp = derive(p, lam)
    z = dp.z_of_x(x)
    eps_tilde, omega_low = dp.coupling(x)
    rows = _infinite_rows(p, lam, omega_low, z, eps_tilde, trunc)
    scale = x_power(x, lam)
    sums = tuple(_row_sum(r) * scale for r in rows)
    tail = sum(_row_tail(r) for r in rows) * abs(scale)

    acc = KahanAccumulator(0.0)
    for s in sums:
        acc.add(s)
    value = float(acc.value)
    if tail > TAIL_WARN_REL * abs(value):
        logger.warning(f"无穷级数内层截断尾项偏大: tail={tail:.3e}, value={value:.6e}, "
                       f"inner_max={trunc.inner_max}")
    return TrfValue(value, float(tail), sums)


def infinite_normalization(kind: str, p: GchParams) -> float:
    """
    无穷级数分支常用的归一化常数
    第一类 Γ(γ−Ω/2μ)/Γ(γ)，第二类 Γ(1−Ω/2μ)/Γ(2−γ)（z^{1−γ} 另乘）
    """
    p.require_mu("归一化常数")
    a = p.omega_cap / (2.0 * p.mu)
    if kind == "first":
        return float(gamma_fn(p.gamma - a) / gamma_fn(p.gamma))
    if kind == "second":
        return float(gamma_fn(1.0 - a) / gamma_fn(2.0 - p.gamma))
    raise DomainError(f"未知的解类别: {kind}", module="series-3trf")


# ==================== 系数提取 ====================

def _coefficients_from_rows(rows: List[np.ndarray], mu: float, eps_unit: float, M: int) -> List[float]:
    """由 z=ε̃=1 的转移表提取 x^{λ+m} 的系数：m = 2i + n"""
    coeffs = [0.0] * (M + 1)
    z_unit = -0.5 * mu
    for n, row in enumerate(rows):
        e_pow = eps_unit ** n
        for i, t in enumerate(row):
            m = 2 * i + n
            if m > M:
                break
            coeffs[m] += float(t) * z_unit ** i * e_pow
    return coeffs


def _check_order(M: int, trunc: TrfTruncation):
    if M < 0:
        raise DomainError(f"M 必须非负，收到 {M}", module="series-3trf")
    if M > 2 * trunc.inner_max + trunc.n_max:
        raise DomainError(
            f"M={M} 超过 2·inner_max+n_max={2 * trunc.inner_max + trunc.n_max}", module="series-3trf"
        )


def _unit_coupling(p: GchParams) -> Tuple[float, Optional[float]]:
    """x=1 处的 (ε̃, ω)，即 ε̃ 关于 x 的线性系数"""
    if p.coupling_limit:
        return -0.25 * p.eps_omega, None
    if p.eps == 0.0:
        return 0.0, p.omega_low
    return -0.5 * p.eps, p.coupling_product / p.eps


def trf_coefficients_infinite(p: GchParams, lam: float, trunc: TrfTruncation, M: int) -> List[float]:
    """无穷级数分支 x^{λ+m} 系数，0 ≤ m ≤ M"""
    _check_order(M, trunc)
    derive(p, lam)
    eps_unit, omega_low = _unit_coupling(p)
    rows = _infinite_rows(p, lam, omega_low, 1.0, 1.0, trunc)
    return _coefficients_from_rows(rows, p.mu, eps_unit, M)


def trf_coefficients_polynomial(ladder: TerminationLadder, p: GchParams, lam: float,
                                trunc: TrfTruncation, M: int) -> List[float]:
    """多项式分支 x^{λ+m} 系数（γ、ω、z、ε̃ 的映射取自 p）"""
    _check_order(M, trunc)
    derive(p, lam)
    eps_unit, omega_low = _unit_coupling(p)
    rows = _polynomial_rows(ladder, p.gamma, lam, omega_low, 1.0, 1.0, trunc)
    return _coefficients_from_rows(rows, p.mu, eps_unit, M)


def trf_coefficients(evaluator: str, p: GchParams, lam: float, trunc: TrfTruncation, M: int,
                     ladder: Optional[TerminationLadder] = None) -> List[float]:
    """按分支分派的系数提取"""
    if evaluator == "infinite":
        return trf_coefficients_infinite(p, lam, trunc, M)
    if evaluator == "polynomial":
        if ladder is None:
            raise DomainError("多项式分支需要终止阶梯", module="series-3trf")
        return trf_coefficients_polynomial(ladder, p, lam, trunc, M)
    raise DomainError(f"未知的分支: {evaluator}", module="series-3trf")


# ==================== QW / RW ====================

def second_kind_power(z: float, gamma: float) -> float:
    """z^{1−γ}，z<0 且 1−γ 非整数时无实数值"""
    e = 1.0 - gamma
    if float(e).is_integer():
        if z == 0.0 and e < 0:
            raise DomainError("z=0 时 z^{1−γ} 发散", module="series-3trf")
        return float(z) ** int(e)
    if z < 0.0 or (z == 0.0 and e < 0):
        raise DomainError(f"RW 要求 z > 0（1−γ={e} 非整数），收到 z={z}", module="series-3trf")
    return float(z) ** e


def qw_rw_eval(kind: str, ladder: TerminationLadder, gamma: float, omega_low: Optional[float],
               z: float, eps_tilde: float, trunc: TrfTruncation) -> TrfValue:
    """
    QW：(γ)_{β_0} 乘 λ=0 的多项式级数
    RW：z^{1−γ}(2−γ)_{ψ_0} 乘 λ=2−2γ 的多项式级数（分母中 γ 变为 2−γ）
    """
    if kind == "first":
        lam = 0.0
        prefactor = pochhammer(gamma, ladder[0])
    elif kind == "second":
        lam = 2.0 - 2.0 * gamma
        prefactor = pochhammer(2.0 - gamma, ladder[0]) * second_kind_power(z, gamma)
    else:
        raise DomainError(f"未知的解类别: {kind}", module="series-3trf")
    inner = trf_polynomial_sum(ladder, gamma, lam, omega_low, z, eps_tilde, trunc)
    return TrfValue(prefactor * inner.value, 0.0, tuple(prefactor * s for s in inner.level_sums))

