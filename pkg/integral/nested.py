"""
嵌套积分表示引擎（传递阶 n ≤ 2）

H_0(W) = 核级数（合流超几何多项式 / Kummer / 生成函数核）
H_ℓ(W) = ∫∫∮ t^{·} u^{·} F_ℓ(v, ·) exp(e(v)·W·α) [(d·D + c_ℓ) H_{ℓ−1}](W·scale)
    α = (1−t)(1−u)，D = W ∂_W，scale = t·u·v
D 作用在指数因子上给出 e·W·α，作用在内层上给出 D H_{ℓ−1}，因此只需核的 0..2 阶 D-导数（逐项精确计算）。

积分表示：y = x^λ Σ_{n ≤ n_cap} ε̃^n H_n(z)，QW/RW 另乘前因子。
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from core.params import GchParams, derive, select_root
from kernels.quadrature import gauss_jacobi_interval
from kernels.scalar import chp_eval, kummer_m, pochhammer
from trf.ladder import TerminationLadder
from trf.series import b_factor, second_kind_power, x_power
from utils.config import thread_cap
from utils.errors import ConvergenceError, DimensionError, DomainError
from utils.logger_config import StructuredLogger
from utils.timing import timing_decorator
from .contour import (
    QuadratureSpec,
    TransferState,
    check_origin_exponent,
    nodes_for,
    require_finite,
    v_power,
)

logger = StructuredLogger(__name__)

MAX_TRANSFER_ORDER = 2
KERNEL_MAX_TERMS = 400

# 核的 D-导数：jets(Y, vprod, order) -> [D^0 H, D^1 H, ..., D^order H]
Jets = Callable[[np.ndarray, np.ndarray, int], List[np.ndarray]]


# ==================== 数据类定义 ====================

@dataclass
class LevelNodes:
    """一层 (t, u, v) 张量节点，展平为一维"""
    weight: np.ndarray  # 求积权 × 与 W 无关的 v 因子
    alpha: np.ndarray  # (1−t)(1−u)
    scale: np.ndarray  # 传给内层的乘子
    expo: np.ndarray  # 指数因子系数 e，E = exp(e·W·α)
    vtag: np.ndarray  # 本层 v（残数形式为 1）
    op: Tuple[float, float]  # (d, c)：G = d·DH + c·H
    vfactor: Optional[Callable[[np.ndarray], np.ndarray]] = None  # 依赖 v_ℓ⋯v_n 的因子
    rho: float = 1.0  # max|scale|/|t u|，用于传递变量界


def tensor_level(t: np.ndarray, wt: np.ndarray, u: np.ndarray, wu: np.ndarray,
                 v: np.ndarray, wv: np.ndarray, vweight: np.ndarray, expo_v: np.ndarray,
                 op: Tuple[float, float], scale_v: np.ndarray = None, vtag_v: np.ndarray = None,
                 vfactor=None, rho: float = 1.0) -> LevelNodes:
    """由一维规则构造张量积节点"""
    T, U, V = np.meshgrid(t, u, np.arange(len(v)), indexing="ij")
    WT, WU, _ = np.meshgrid(wt, wu, np.arange(len(v)), indexing="ij")
    idx = V.ravel()
    vv = v[idx]
    tt, uu = T.ravel(), U.ravel()
    scale_part = vv if scale_v is None else scale_v[idx]
    return LevelNodes(
        weight=(WT.ravel() * WU.ravel()) * (wv[idx] * vweight[idx]),
        alpha=(1.0 - tt) * (1.0 - uu),
        scale=tt * uu * scale_part,
        expo=expo_v[idx],
        vtag=(vv if vtag_v is None else vtag_v[idx]).astype(complex),
        op=op,
        vfactor=vfactor,
        rho=rho,
    )


# ==================== 引擎 ====================

def _level_eval(levels: Sequence[LevelNodes], depth: int, jets: Jets,
                W: np.ndarray, vprod: np.ndarray, order: int) -> List[np.ndarray]:
    """返回第 depth 层的 [H, DH]（order=1）或 [H]（order=0），W 与 vprod 同形 (P,)"""
    level = levels[depth - 1]
    Y = np.multiply.outer(W, level.scale)
    vp = np.multiply.outer(vprod, level.vtag)
    if depth == 1:
        inner = jets(Y, vp, order + 1)
    else:
        flat = _level_eval(levels, depth - 1, jets, Y.ravel(), vp.ravel(), order + 1)
        inner = [f.reshape(Y.shape) for f in flat]

    d, c = level.op
    G = d * inner[1] + c * inner[0]
    Z = np.multiply.outer(W, level.alpha)
    eZ = level.expo * Z
    E = np.exp(eZ) * level.weight
    if level.vfactor is not None:
        E = E * level.vfactor(vp)
    out = [np.sum(E * G, axis=-1)]
    if order >= 1:
        DG = d * inner[2] + c * inner[1]
        out.append(np.sum(E * (eZ * G + DG), axis=-1))
    for arr in out:
        require_finite(arr, f"嵌套积分第 {depth} 层")
    return out


def nested_eval(levels: Sequence[LevelNodes], jets: Jets, z: complex,
                chunk_size: int = 64) -> complex:
    """
    计算 H_n(z)，n = len(levels)

    n=2 时第 1 层按外层节点分块并行；分块结果按提交顺序合并，结果与线程数无关。
    """
    n = len(levels)
    if n == 0:
        return complex(jets(np.array([z], dtype=complex), np.ones(1, dtype=complex), 0)[0][0])
    if n > MAX_TRANSFER_ORDER:
        raise DimensionError(f"传递阶 {n} 超出支持范围 (≤ {MAX_TRANSFER_ORDER})")

    W = np.array([z], dtype=complex)
    one = np.ones(1, dtype=complex)
    if n == 1:
        return complex(_level_eval(levels, 1, jets, W, one, 0)[0][0])

    top, inner_level = levels[1], levels[0]
    Y = z * top.scale
    vp = top.vtag.astype(complex)
    TransferState(float(np.max(np.abs(Y))), 2, 2).check(z, top.rho)

    blocks = [(s, min(s + chunk_size, len(Y))) for s in range(0, len(Y), chunk_size)]
    workers = min(thread_cap(), len(blocks))

    def run(block):
        s, e = block
        return _level_eval([inner_level], 1, jets, Y[s:e], vp[s:e], 1)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    H1 = np.concatenate([p[0] for p in parts])
    DH1 = np.concatenate([p[1] for p in parts])

    d, c = top.op
    G = d * DH1 + c * H1
    E = np.exp(top.expo * z * top.alpha) * top.weight
    if top.vfactor is not None:
        E = E * top.vfactor(vp)
    value = np.sum(E * G)
    require_finite(np.atleast_1d(value), "嵌套积分第 2 层")
    return complex(value)


# ==================== 核级数 ====================

def series_jets(coeffs: np.ndarray) -> Jets:
    """H_0(W) = Σ g_i W^i 的 D-导数：D^k H_0 = Σ i^k g_i W^i（Horner）"""
    idx = np.arange(len(coeffs), dtype=float)

    def jets(Y, vprod, order):
        out = []
        for k in range(order + 1):
            g = coeffs * idx ** k
            acc = np.zeros_like(Y, dtype=complex)
            for gi in g[::-1]:
                acc = acc * Y + gi
            out.append(acc)
        return out

    return jets


def kernel_coefficients(gamma: float, lam: float, a0: float, radius: float,
                        cap: Optional[int] = None) -> np.ndarray:
    """
    第 0 层系数 g_i = Π_{j<i} B(j, 0)

    cap 给定（多项式分支 β_0）时取 i ≤ cap；否则截断到 |g_i| R^i < 1e-18。
    """
    coeffs = [1.0]
    limit = cap if cap is not None else KERNEL_MAX_TERMS
    small_run = 0
    for i in range(limit):
        g = coeffs[-1] * b_factor(i, 0, gamma, lam, a0)
        coeffs.append(g)
        if cap is None:
            if abs(g) * radius ** (i + 1) < 1e-18:
                small_run += 1
                if small_run >= 3:
                    break
            else:
                small_run = 0
    else:
        if cap is None:
            raise ConvergenceError(f"核级数 {KERNEL_MAX_TERMS} 项内未收敛 (R={radius:.3e})",
                                   module="integral-rep")
    return np.asarray(coeffs, dtype=float)


# ==================== 积分表示 ====================

def _level_a(branch: str, p: GchParams, lam: float, level: int,
             ladder: Optional[TerminationLadder]) -> float:
    if branch == "polynomial":
        return -float(ladder[level])
    return p.omega_cap / (2.0 * p.mu) + 0.5 * (level + lam)


def build_rep_levels(branch: str, p: GchParams, lam: float, n: int, spec: QuadratureSpec,
                     omega_low: Optional[float], ladder: Optional[TerminationLadder]) -> List[LevelNodes]:
    """积分表示第 1..n 层节点"""
    gamma = p.gamma
    line, circle = spec.node_counts(n)
    levels = []
    for ell in range(1, n + 1):
        a = _level_a(branch, p, lam, ell, ladder)
        contour = spec.resolve_contour(branch == "polynomial")
        if contour == "origin":
            check_origin_exponent(a, f"积分表示第 {ell} 层")
            if a > 0:
                raise DomainError(f"原点围道要求第 {ell} 层 a 为非正整数，收到 {a}", module="integral-rep")
        t_exp, u_exp = spec.jacobi_exponents(ell, gamma, lam)
        t, wt = gauss_jacobi_interval(line, t_exp, 0.0)
        u, wu = gauss_jacobi_interval(line, u_exp, 0.0)
        v, wv = nodes_for(contour, spec, n=circle)
        op = (0.0, 1.0) if omega_low is None else (1.0, 0.5 * (ell - 1 + omega_low + lam))
        levels.append(tensor_level(
            t, wt, u, wu, v, wv,
            vweight=v_power(v, a - 1.0) / (1.0 - v),
            expo_v=-v / (1.0 - v),
            op=op,
            rho=spec.max_abs_v(contour),
        ))
    return levels


def _kernel_closed_form(kind: str, branch: str, p: GchParams, lam: float, z: float,
                        ladder: Optional[TerminationLadder]) -> float:
    """H_0(z)：多项式分支为 c_0=1 的合流超几何多项式，无穷分支为 Kummer M"""
    if branch == "polynomial":
        base = p.gamma if kind == "first" else 2.0 - p.gamma
        return chp_eval(kind, ladder[0], p.gamma, z) / pochhammer(base, ladder[0])
    a0 = p.omega_cap / (2.0 * p.mu) + 0.5 * lam
    b0 = p.gamma if kind == "first" else 2.0 - p.gamma
    return kummer_m(a0, b0, z)


@timing_decorator
def integral_rep_eval(kind: str, branch: str, p: GchParams, x: float, n_cap: int,
                      spec: QuadratureSpec = None,
                      ladder: Optional[TerminationLadder] = None) -> float:
    """
    积分表示求值，外层 Σ_n 截断于 n_cap

    多项式分支返回 QW（第一类）或 RW（第二类）；
    无穷分支返回 c_0 = 1 的 x^λ Σ ε̃^n H_n(z)。
    """
    spec = spec or QuadratureSpec()
    if n_cap < 0 or n_cap > MAX_TRANSFER_ORDER:
        raise DimensionError(f"n_cap={n_cap} 超出支持范围 0..{MAX_TRANSFER_ORDER}")
    if branch not in ("polynomial", "infinite"):
        raise DomainError(f"未知的分支: {branch}", module="integral-rep")
    if branch == "polynomial":
        if ladder is None or len(ladder) < n_cap + 1:
            raise DomainError("多项式分支需要长度 ≥ n_cap+1 的终止阶梯", module="integral-rep")
    else:
        p.require_mu("无穷级数积分表示")

    lam = select_root(p, kind)
    dp = derive(p, lam)
    z = dp.z_of_x(x)
    eps_tilde, omega_low = dp.coupling(x)

    total = _kernel_closed_form(kind, branch, p, lam, z, ladder)
    if n_cap >= 1 and eps_tilde != 0.0:
        rho_max = max(spec.max_abs_v("origin"), spec.max_abs_v("unit"))
        radius = abs(z) * rho_max ** n_cap + 1e-300
        cap = ladder[0] if branch == "polynomial" else None
        coeffs = kernel_coefficients(p.gamma, lam, _level_a(branch, p, lam, 0, ladder), radius, cap)
        jets = series_jets(coeffs)
        for n in range(1, n_cap + 1):
            levels = build_rep_levels(branch, p, lam, n, spec, omega_low, ladder)
            h = nested_eval(levels, jets, complex(z), spec.chunk_size)
            logger.debug("积分表示层值", order=n, real=h.real, imag=h.imag)
            total += eps_tilde ** n * h.real

    if branch == "polynomial":
        if kind == "first":
            return pochhammer(p.gamma, ladder[0]) * total
        return pochhammer(2.0 - p.gamma, ladder[0]) * second_kind_power(z, p.gamma) * total
    return total * x_power(x, lam)
