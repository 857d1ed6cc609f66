"""
Gauss 型求积规则

Gauss–Jacobi 权函数吸收端点奇异 (t-a)^L (b-t)^R；节点由 scipy.special.roots_jacobi 给出，
再线性映射到 [a, b]。
"""

from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.special import roots_jacobi

from utils.errors import DomainError


@lru_cache(maxsize=256)
def _jacobi_reference(n: int, alpha: float, beta: float) -> Tuple[np.ndarray, np.ndarray]:
    x, w = roots_jacobi(n, alpha, beta)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_jacobi_interval(n: int,
                          left_exp: float,
                          right_exp: float,
                          a: float = 0.0,
                          b: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """
    ∫_a^b f(t) (t-a)^left_exp (b-t)^right_exp dt ≈ Σ w_k f(t_k)

    Args:
        n: 节点数
        left_exp: 左端点幂次，必须 > -1
        right_exp: 右端点幂次，必须 > -1
        a, b: 积分区间

    Returns:
        (nodes, weights)
    """
    if n < 1:
        raise DomainError(f"Gauss–Jacobi 节点数必须 ≥ 1，收到 {n}", module="scalar-kernels")
    if left_exp <= -1.0 or right_exp <= -1.0:
        raise DomainError(
            f"Gauss–Jacobi 端点幂次必须 > -1: left={left_exp}, right={right_exp}",
            module="integral-rep",
        )
    # roots_jacobi 的权为 (1-x)^alpha (1+x)^beta，左端 x=-1 对应 beta
    x, w = _jacobi_reference(int(n), float(right_exp), float(left_exp))
    half = 0.5 * (b - a)
    nodes = a + half * (1.0 + x)
    weights = w * half ** (left_exp + right_exp + 1.0)
    return nodes, weights


def gauss_legendre_interval(n: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    """[a, b] 上的 Gauss–Legendre 规则"""
    if n < 1:
        raise DomainError(f"Gauss–Legendre 节点数必须 ≥ 1，收到 {n}", module="physics-apps")
    x, w = np.polynomial.legendre.leggauss(int(n))
    half = 0.5 * (b - a)
    return a + half * (1.0 + x), half * w
