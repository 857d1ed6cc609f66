"""
围道积分与求积配置

(1/2πi)∮ f(v) dv 用等距梯形规则离散：
    原点圆（逆时针）  Σ_k f(v_k)(v_k − c)/N
    v=1 附近小圆（顺时针）取负号
解析被积函数下谱收敛。
"""

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from kernels.scalar import is_nonpositive_integer, pochhammer
from utils.errors import ContourBranchError, DomainError, QuadratureError
from utils.logger_config import get_logger

logger = get_logger(__name__)

CONTOURS = ("auto", "origin", "unit")


# ==================== 数据类定义 ====================

@dataclass(frozen=True)
class QuadratureSpec:
    """(t, u, v) 积分栈的离散参数"""
    circle_nodes: int = 128  # v 围道梯形节点数
    circle_radius: float = 0.5  # 原点圆半径
    line_nodes: int = 32  # t、u 的 Gauss–Jacobi 节点数
    contour: str = "auto"  # auto | origin | unit
    unit_radius: float = 0.5  # 绕 v=1 小圆半径
    deep_line_nodes: int = 12  # n=2 嵌套时每层的线节点数
    deep_circle_nodes: int = 40  # n=2 嵌套时每层的围道节点数
    chunk_size: int = 64  # n=2 外层节点分块大小

    def __post_init__(self):
        for name in ("circle_nodes", "line_nodes", "deep_line_nodes", "deep_circle_nodes"):
            if getattr(self, name) < 8:
                raise DomainError(f"{name} 必须 ≥ 8，收到 {getattr(self, name)}", module="integral-rep")
        if not 0.0 < self.circle_radius < 1.0:
            raise DomainError(f"circle_radius 必须在 (0,1) 内，收到 {self.circle_radius}", module="integral-rep")
        if not 0.0 < self.unit_radius < 1.0:
            raise DomainError(f"unit_radius 必须在 (0,1) 内，收到 {self.unit_radius}", module="integral-rep")
        if self.contour not in CONTOURS:
            raise DomainError(f"未知的围道类型: {self.contour}", module="integral-rep")
        if self.chunk_size < 1:
            raise DomainError("chunk_size 必须 ≥ 1", module="integral-rep")

    @staticmethod
    def jacobi_exponents(level: float, gamma: float, lam: float) -> Tuple[float, float]:
        """第 level 层 t、u 的端点幂次 (level/2 − 1 + λ/2, γ + level/2 − 2 + λ/2)"""
        return 0.5 * level - 1.0 + 0.5 * lam, gamma + 0.5 * level - 2.0 + 0.5 * lam

    def node_counts(self, depth: int) -> Tuple[int, int]:
        """depth ≥ 2 时使用较小的每层节点数"""
        if depth >= 2:
            return self.deep_line_nodes, self.deep_circle_nodes
        return self.line_nodes, self.circle_nodes

    def resolve_contour(self, exponent_integral: bool) -> str:
        """auto：整数幂次（多项式分支）用原点圆，其余用 v=1 小圆"""
        if self.contour != "auto":
            return self.contour
        return "origin" if exponent_integral else "unit"

    def max_abs_v(self, contour: str) -> float:
        return self.circle_radius if contour == "origin" else 1.0 + self.unit_radius


@dataclass(frozen=True)
class TransferState:
    """嵌套层间传递的 w_{a,b} = z ∏ t_l u_l v_l 的最大模"""
    w: float
    a: int
    b: int

    def bound(self, z: complex, rho: float) -> float:
        return abs(z) * rho ** (self.b - self.a + 1)

    def check(self, z: complex, rho: float) -> bool:
        ok = self.w <= self.bound(z, rho) * (1.0 + 1e-12) + 1e-300
        if not ok:
            logger.warning(f"传递变量超出界: |w|={self.w:.3e} > {self.bound(z, rho):.3e} (层 {self.a}..{self.b})")
        return ok


# ==================== 围道节点 ====================

def contour_nodes(n: int, center: complex = 0.0, radius: float = 0.5,
                  clockwise: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """返回 (v, w)，使 Σ w f(v) ≈ (1/2πi)∮ f dv"""
    theta = 2.0 * np.pi * np.arange(n) / n
    offset = radius * np.exp(1j * theta)
    v = center + offset
    w = offset / n
    if clockwise:
        w = -w
    return v, w


def nodes_for(contour: str, spec: QuadratureSpec, n: int = None,
              radius: float = None) -> Tuple[np.ndarray, np.ndarray]:
    """按围道类型取节点：origin 为原点圆逆时针，unit 为 v=1 小圆顺时针"""
    n = n or spec.circle_nodes
    if contour == "origin":
        return contour_nodes(n, 0.0, radius or spec.circle_radius, clockwise=False)
    if contour == "unit":
        return contour_nodes(n, 1.0, radius or spec.unit_radius, clockwise=True)
    raise DomainError(f"未知的围道类型: {contour}", module="integral-rep")


def require_finite(values: np.ndarray, what: str):
    if not np.all(np.isfinite(values)):
        raise QuadratureError(f"{what}: 求积节点上出现非有限值")


def contour_trapezoid(f: Callable[[np.ndarray], np.ndarray], spec: QuadratureSpec = None,
                      center: complex = 0.0, radius: float = None,
                      clockwise: bool = False, nodes: int = None) -> complex:
    """(1/2πi)∮ f(v) dv 的梯形近似；f 接受 numpy 复数组"""
    spec = spec or QuadratureSpec()
    v, w = contour_nodes(nodes or spec.circle_nodes, center,
                         spec.circle_radius if radius is None else radius, clockwise)
    values = np.asarray(f(v), dtype=complex)
    require_finite(values, "contour_trapezoid")
    return complex(np.sum(values * w))


def v_power(v: np.ndarray, exponent: float) -> np.ndarray:
    """v^exponent，整数幂次走整数乘方"""
    if float(exponent).is_integer():
        return v ** int(exponent)
    return v ** exponent


def check_origin_exponent(exponent: float, what: str):
    """原点圆上 v^exponent 必须是整数幂"""
    if not float(exponent).is_integer():
        raise ContourBranchError(f"{what}: 幂次 {exponent} 非整数，原点围道上有支点，请改用 unit 围道")


# ==================== 合流超几何多项式的围道形式 ====================

def chp_contour(kind: str, degree: int, gamma: float, z: float, spec: QuadratureSpec = None) -> float:
    """
    F_β = β!·(1/2πi)∮ exp(−zv/(1−v)) / (v^{β+1}(1−v)^γ) dv
    第二类 (1−v)^γ 换为 (1−v)^{2−γ}
    """
    spec = spec or QuadratureSpec()
    if degree < 0:
        raise DomainError(f"多项式次数必须非负，收到 {degree}", module="integral-rep")
    if kind == "first":
        power = gamma
    elif kind == "second":
        power = 2.0 - gamma
    else:
        raise DomainError(f"未知的多项式类别: {kind}", module="integral-rep")

    def integrand(v):
        return np.exp(-z * v / (1.0 - v)) / (v ** (degree + 1) * (1.0 - v) ** power)

    value = contour_trapezoid(integrand, spec)
    return float(math.factorial(degree) * value.real)


# ==================== Kummer M 的围道形式 ====================

def kummer_contour(form: str, a: float, b: float, z: float, spec: QuadratureSpec = None) -> float:
    """
    Kummer M(a, b, z) 的三种围道表示

    origin: a = −k 为非正整数，原点圆
        M = (−1)^k k!/(b)_k · (1/2πi)∮ e^{zv} v^{−k−1} (1−v)^{b+k−1} dv
    large:  b 为正整数，半径 R > |z| 的大圆
        M = Γ(b)·(1/2πi)∮ e^v v^{−b} (1 − z/v)^{−a} dv
    unit:   b 为正整数、(1−a)_{b−1} ≠ 0，绕 v=1 顺时针小圆
        M = Γ(b)/(1−a)_{b−1} · (1/2πi)∮ e^{−zv/(1−v)} v^{a−1} (1−v)^{−b} dv
    """
    spec = spec or QuadratureSpec()
    if form == "origin":
        if not is_nonpositive_integer(a):
            raise ContourBranchError(f"原点围道形式要求 a 为非正整数，收到 a={a}")
        k = int(-a)
        value = contour_trapezoid(
            lambda v: np.exp(z * v) * v ** (-k - 1) * (1.0 - v) ** (b + k - 1.0), spec
        )
        return float((-1.0) ** k * math.factorial(k) / pochhammer(b, k) * value.real)

    if not (b >= 1 and float(b).is_integer()):
        raise DomainError(f"{form} 围道形式要求 b 为正整数，收到 b={b}", module="integral-rep")
    nb = int(b)
    if form == "large":
        radius = max(1.0, 2.0 * abs(z))
        value = contour_trapezoid(
            lambda v: np.exp(v) * v ** (-nb) * (1.0 - z / v) ** (-a), spec, radius=radius
        )
        return float(math.factorial(nb - 1) * value.real)
    if form == "unit":
        norm = pochhammer(1.0 - a, nb - 1)
        if norm == 0.0:
            raise DomainError(f"(1−a)_(b−1) = 0，unit 围道形式不可用: a={a}, b={b}", module="integral-rep")
        value = contour_trapezoid(
            lambda v: np.exp(-z * v / (1.0 - v)) * v_power(v, a - 1.0) * (1.0 - v) ** (-nb),
            spec, center=1.0, radius=spec.unit_radius, clockwise=True,
        )
        return float(math.factorial(nb - 1) / norm * value.real)
    raise DomainError(f"未知的 Kummer 围道形式: {form}", module="integral-rep")
