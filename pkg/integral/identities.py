"""
积分表示的构件恒等式

K_j：有限 Pochhammer 比值和 = t、u 的 Beta 型积分 × v 围道积分
Q_j：对应的无穷级数形式，核为 M(a_j + i', 1, ·)

两者都化为同一形式：
    z^{i'} ∫∫ t^{p−1} u^{q−1} (1/2πi)∮ exp(−vZ/(1−v)) v^{a−1}/(1−v) dv,  Z = z(1−t)(1−u)
其中 p = i' + j/2 + λ/2，q = i' − 1 + γ + j/2 + λ/2；K_j 取 a = i' − β_j，Q_j 取 a = a_j + i'。
"""

from typing import Tuple

import numpy as np

from core.params import GchParams
from kernels.quadrature import gauss_jacobi_interval
from utils.errors import DomainError
from utils.logger_config import get_logger
from utils.summation import KahanAccumulator
from .contour import (
    QuadratureSpec,
    check_origin_exponent,
    nodes_for,
    require_finite,
    v_power,
)

logger = get_logger(__name__)


def _shifts(j: int, lam: float, gamma: float, i_prev: int) -> Tuple[float, float]:
    p = i_prev + 0.5 * j + 0.5 * lam
    q = i_prev - 1.0 + gamma + 0.5 * j + 0.5 * lam
    if p <= 0.0 or q <= 0.0:
        raise DomainError(f"Beta 积分要求 p, q > 0: p={p}, q={q}", module="integral-rep")
    return p, q


def _triple_quadrature(p: float, q: float, a: float, z: float, i_prev: int,
                       spec: QuadratureSpec, contour: str) -> float:
    t, wt = gauss_jacobi_interval(spec.line_nodes, p - 1.0, 0.0)
    u, wu = gauss_jacobi_interval(spec.line_nodes, q - 1.0, 0.0)
    v, wv = nodes_for(contour, spec)

    alpha = np.multiply.outer(1.0 - t, 1.0 - u)  # (nt, nu)
    weight_tu = np.multiply.outer(wt, wu)
    vfac = wv * v_power(v, a - 1.0) / (1.0 - v)
    expo = -v / (1.0 - v)
    integrand = np.exp(np.multiply.outer(z * alpha, expo)) * vfac  # (nt, nu, nv)
    require_finite(integrand, "K/Q 恒等式")
    value = np.sum(weight_tu[:, :, None] * integrand)
    return float((z ** i_prev * value).real)


def verify_kj(j: int, lam: float, gamma: float, beta_j: int, i_prev: int, z: float,
              spec: QuadratureSpec = None) -> Tuple[float, float]:
    """
    K_j 恒等式两侧

    Returns:
        (lhs, rhs)：lhs 为有限和（含 1/(pq) 前因子），rhs 为三重求积
    """
    spec = spec or QuadratureSpec()
    if j < 1:
        raise DomainError(f"j 必须 ≥ 1，收到 {j}", module="integral-rep")
    if not 0 <= i_prev <= beta_j:
        raise DomainError(f"要求 0 ≤ i_prev ≤ β_j: i_prev={i_prev}, β_j={beta_j}", module="integral-rep")
    p, q = _shifts(j, lam, gamma, i_prev)

    # Σ_{n=0}^{β−i'} (i'−β)_n/((p+1)_n (q+1)_n) z^{i'+n} / (pq)
    acc = KahanAccumulator(0.0)
    term = z ** i_prev / (p * q)
    for n in range(beta_j - i_prev + 1):
        acc.add(term)
        term *= (i_prev - beta_j + n) / ((p + 1.0 + n) * (q + 1.0 + n)) * z
    lhs = float(acc.value)

    a = float(i_prev - beta_j)
    contour = spec.resolve_contour(True)
    rhs = _triple_quadrature(p, q, a, z, i_prev, spec, contour)
    return lhs, rhs


def verify_qj(j: int, p_gch: GchParams, lam: float, i_prev: int, z: float,
              spec: QuadratureSpec = None, inner_max: int = 200) -> Tuple[float, float]:
    """
    Q_j 恒等式两侧，a_j = Ω/(2μ) + j/2 + λ/2

    原点围道只在 a_j + i' 为非正整数时成立；非整数幂次抛出 ContourBranchError。
    """
    spec = spec or QuadratureSpec()
    if j < 1:
        raise DomainError(f"j 必须 ≥ 1，收到 {j}", module="integral-rep")
    if i_prev < 0:
        raise DomainError(f"i_prev 必须非负，收到 {i_prev}", module="integral-rep")
    p_gch.require_mu("Q_j 恒等式")
    gamma = p_gch.gamma
    p, q = _shifts(j, lam, gamma, i_prev)
    a = p_gch.omega_cap / (2.0 * p_gch.mu) + 0.5 * j + 0.5 * lam + i_prev

    acc = KahanAccumulator(0.0)
    term = z ** i_prev / (p * q)
    last = term
    for n in range(inner_max + 1):
        acc.add(term)
        last = term
        term *= (a + n) / ((p + 1.0 + n) * (q + 1.0 + n)) * z
        if term == 0.0:
            break
    lhs = float(acc.value)
    tail = abs(term)
    if tail > 1e-12 * max(1.0, abs(lhs)):
        logger.warning(f"Q_j 左侧截断尾项偏大: tail={tail:.3e}, 末项={last:.3e}")

    integral = float(a).is_integer()
    contour = spec.resolve_contour(integral and a <= 0)
    if contour == "origin":
        check_origin_exponent(a, "Q_j")
        if a > 0:
            raise DomainError(f"原点围道要求 a_j+i' 为非正整数，收到 {a}", module="integral-rep")
    rhs = _triple_quadrature(p, q, a, z, i_prev, spec, contour)
    return lhs, rhs
