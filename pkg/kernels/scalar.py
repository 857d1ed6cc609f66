"""
标量特殊函数

log-Gamma、Pochhammer、Beta、误差函数、Kummer M 以及两类合流超几何多项式。
全部为纯函数，可在任意线程中并发调用。
"""

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import special

from utils.errors import DomainError, KummerConvergenceError
from utils.summation import KahanAccumulator, compensated_sum
from .quadrature import gauss_jacobi_interval

# ==================== 常量 ====================

DIRECT_PRODUCT_MAX = 64  # n ≤ 64 时用直接乘积
KUMMER_MAX_TERMS = 10_000
KUMMER_REL_STOP = 1e-16
KUMMER_STOP_RUN = 3  # 连续 3 项低于阈值才停止
KUMMER_TRANSFORM_BELOW = -20.0


def is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


# ==================== Gamma 族 ====================

def lgamma(x: float) -> float:
    """log|Γ(x)|"""
    return float(special.gammaln(x))


def pochhammer(x: float, n: int) -> float:
    """
    升阶乘 (x)_n = x(x+1)...(x+n-1)

    n ≤ 64 直接乘积，保证 (−β)_n 在 n > β 时精确为 0；
    更大的 n 用 log-Gamma 差值并单独跟踪符号。
    """
    if n < 0:
        raise DomainError(f"Pochhammer 的计数必须非负，收到 n={n}", module="scalar-kernels")
    if n == 0:
        return 1.0
    if n <= DIRECT_PRODUCT_MAX:
        result = 1.0
        for k in range(n):
            result *= x + k
        return result

    if is_nonpositive_integer(x):
        if -x < n:
            return 0.0
        # (x)_n = (−1)^n (1−x−n)_n，基数为正
        return (-1.0) ** n * pochhammer(1.0 - x - n, n)
    sign = special.gammasgn(x + n) * special.gammasgn(x)
    return float(sign * math.exp(special.gammaln(x + n) - special.gammaln(x)))


def beta_integral(p: float, q: float) -> float:
    """B(p, q) = Γ(p)Γ(q)/Γ(p+q)"""
    if p <= 0 or q <= 0:
        raise DomainError(f"Beta 函数要求 p > 0 且 q > 0，收到 p={p}, q={q}", module="scalar-kernels")
    return float(special.beta(p, q))


def _split_exponent(e: float):
    """e = 小数部分 + 非负整数部分，小数部分落在 (-1, 1)"""
    whole = max(0, math.floor(e))
    return e - whole, whole


def beta_verify(p: float, q: float, nodes: int = 40):
    """
    Beta 函数闭式与求积对照

    在 t=1/2 处拆分：左半段权 t^{p-1}，右半段权 (1-t)^{q-1}，
    两段的剩余因子都在各自区间上解析。Jacobi 权只取端点幂次的小数部分，
    整数部分作为多项式因子留在被积函数里；闭式取 mpmath 的高精度值。

    Returns:
        (closed_form, quadrature)
    """
    if p <= 0 or q <= 0:
        raise DomainError(f"Beta 函数要求 p > 0 且 q > 0，收到 p={p}, q={q}", module="scalar-kernels")
    closed = float(mpmath.beta(p, q))
    left_exp, left_whole = _split_exponent(p - 1.0)
    right_exp, right_whole = _split_exponent(q - 1.0)
    t_left, w_left = gauss_jacobi_interval(nodes, left_exp, 0.0, 0.0, 0.5)
    t_right, w_right = gauss_jacobi_interval(nodes, 0.0, right_exp, 0.5, 1.0)
    left = np.dot(w_left, t_left ** left_whole * (1.0 - t_left) ** (q - 1.0))
    right = np.dot(w_right, (1.0 - t_right) ** right_whole * t_right ** (p - 1.0))
    return closed, float(left + right)


def erf(x: float) -> float:
    """误差函数"""
    return float(special.erf(x))


# ==================== Kummer M ====================

@dataclass(frozen=True)
class KummerResult:
    """Kummer 级数求和结果"""
    value: float
    abs_sum: float  # Σ|项|，用于条件数估计
    terms: int


def _kummer_series(a: float, b: float, z: float) -> KummerResult:
    acc = KahanAccumulator(0.0)
    term = 1.0
    small_run = 0
    n = 0
    while True:
        acc.add(term)
        term *= (a + n) / ((b + n) * (n + 1)) * z
        n += 1
        if term == 0.0:
            break
        if abs(term) <= KUMMER_REL_STOP * abs(acc.value):
            small_run += 1
            if small_run >= KUMMER_STOP_RUN:
                acc.add(term)
                n += 1
                break
        else:
            small_run = 0
        if n >= KUMMER_MAX_TERMS:
            raise KummerConvergenceError(
                f"Kummer 级数 {KUMMER_MAX_TERMS} 项内未收敛: a={a}, b={b}, z={z}"
            )
    return KummerResult(float(acc.value), float(acc.abs_sum), n)


def kummer_m_detailed(a: float, b: float, z: float) -> KummerResult:
    """
    Kummer M(a, b, z)，附带 Σ|项| 与项数

    z < -20 使用 Kummer 变换 M(a,b,z) = e^z M(b-a,b,-z)；
    -20 ≤ z < 0 时两种形式都求和，取 Σ|项|/|值| 较小的一种。
    """
    if is_nonpositive_integer(b):
        raise DomainError(f"Kummer M 的参数 b 不能是非正整数，收到 b={b}", module="scalar-kernels")
    if z == 0.0:
        return KummerResult(1.0, 1.0, 1)
    if z >= 0.0:
        return _kummer_series(a, b, z)

    scale = math.exp(z)
    if z < KUMMER_TRANSFORM_BELOW:
        inner = _kummer_series(b - a, b, -z)
        return KummerResult(scale * inner.value, scale * inner.abs_sum, inner.terms)

    direct = _kummer_series(a, b, z)
    inner = _kummer_series(b - a, b, -z)
    transformed = KummerResult(scale * inner.value, scale * inner.abs_sum, inner.terms)

    def condition(r: KummerResult) -> float:
        return r.abs_sum / abs(r.value) if r.value != 0.0 else math.inf

    return direct if condition(direct) <= condition(transformed) else transformed


def kummer_m(a: float, b: float, z: float) -> float:
    """Kummer 合流超几何函数 M(a, b, z) = Σ (a)_n/((b)_n n!) z^n"""
    return kummer_m_detailed(a, b, z).value


# ==================== 合流超几何多项式 ====================

def _chp_base(kind: str, gamma: float) -> float:
    if kind == "first":
        base = gamma
    elif kind == "second":
        base = 2.0 - gamma
    else:
        raise DomainError(f"未知的多项式类别: {kind}", module="scalar-kernels")
    if is_nonpositive_integer(base):
        label = "γ" if kind == "first" else "2−γ"
        raise DomainError(f"{label}={base} 是非正整数，多项式未定义", module="scalar-kernels")
    return base


def chp_eval(kind: str, degree: int, gamma: float, z: float) -> float:
    """
    第一类 F_β(γ;z) = (γ)_β Σ_{n≤β} (−β)_n/((γ)_n n!) z^n，
    第二类 A_ψ(γ;z) 同形但 γ 换成 2−γ。
    """
    if degree < 0:
        raise DomainError(f"多项式次数必须非负，收到 {degree}", module="scalar-kernels")
    base = _chp_base(kind, gamma)

    def terms():
        term = 1.0
        for n in range(degree + 1):
            yield term
            term *= (n - degree) / ((base + n) * (n + 1)) * z

    return pochhammer(base, degree) * float(compensated_sum(terms()))
