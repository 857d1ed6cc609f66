"""
生成函数

合流超几何多项式：
    Σ_β t^β/β! F_β(γ;z) = (1−t)^{−γ} exp(−zt/(1−t))
    Σ_ψ t^ψ/ψ! A_ψ(γ;z) = (1−t)^{γ−2} exp(−zt/(1−t))

GCH 多项式（有限支撑权重、传递阶截断于 n_cap）：
    左边  β 格点上对 QW/RW 的加权和，β_{n_cap} 之后的求和用几何级数闭式
    右边  嵌套积分，核为上面的生成函数，每层一条 v 围道
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Tuple

import numpy as np

from core.params import GchParams, derive, select_root
from integral.contour import QuadratureSpec, nodes_for
from integral.nested import LevelNodes, nested_eval, tensor_level
from kernels.quadrature import gauss_jacobi_interval
from trf.ladder import TerminationLadder, TrfTruncation
from trf.series import qw_rw_eval, second_kind_power
from utils.config import thread_cap
from utils.errors import DimensionError, DomainError, LatticeBudgetError
from utils.logger_config import StructuredLogger
from utils.timing import timing_decorator
from .weights import WeightSeq

logger = StructuredLogger(__name__)

LATTICE_BUDGET = 10 ** 7
TAIL_WARN_REL = 1e-12
MAX_RHS_ORDER = 2
COLLAPSE_FORMS = ("contour", "residue")


# ==================== 合流超几何多项式的生成函数 ====================

def _kernel_exponent(kind: str, gamma: float) -> float:
    if kind == "first":
        return -gamma
    if kind == "second":
        return gamma - 2.0
    raise DomainError(f"未知的解类别: {kind}", module="genfunc")


def genfunc_chp(kind: str, t: float, gamma: float, z: float) -> float:
    """第一类 (1−t)^{−γ}e^{−zt/(1−t)}，第二类 (1−t)^{γ−2}e^{−zt/(1−t)}"""
    exponent = _kernel_exponent(kind, gamma)
    if abs(t) >= 1.0:
        raise DomainError(f"生成函数要求 |t| < 1，收到 t={t}", module="genfunc")
    return float((1.0 - t) ** exponent * math.exp(-z * t / (1.0 - t)))


# ==================== 左边：β 格点 ====================

def lattice_size(B: int, n_cap: int) -> int:
    """Σ_{m ≤ n_cap} #{0 ≤ β_0 ≤ … ≤ β_m ≤ B}"""
    return sum(math.comb(B + m + 1, m + 1) for m in range(n_cap + 1))


def _check_orders(ws: WeightSeq, n_cap: int, limit: int = None):
    if n_cap < 0:
        raise DomainError(f"n_cap 必须非负，收到 {n_cap}", module="genfunc")
    if limit is not None and n_cap > limit:
        raise DimensionError(f"n_cap={n_cap} 超出支持范围 0..{limit}", module="genfunc")
    if n_cap > ws.K:
        raise DomainError(f"权重支撑 K={ws.K} 小于 n_cap={n_cap}", module="genfunc")


def _lattice_weight(ws: WeightSeq, betas: Tuple[int, ...]) -> float:
    """s_0^{β_0}/β_0! · Π_{n=1}^{m−1} s_n^{β_n} · s_{m,K}^{β_m}（m=0 时为 s_{0,K}^{β_0}/β_0!）"""
    m = len(betas) - 1
    weight = 1.0 / math.factorial(betas[0])
    for n, b in enumerate(betas):
        base = ws.tail(n) if n == m else ws[n]
        weight *= base ** b
    return weight


def _stripe(kind: str, gamma: float, omega_low, z: float, eps_tilde: float,
            ws: WeightSeq, m: int, b0: int, B: int) -> Tuple[float, float]:
    """β_0 = b0 这一条带的 (加权和, 触及截断边界 β_m = B 的项之模和)"""
    trunc = TrfTruncation(n_max=m, inner_max=1)
    total, edge = 0.0, 0.0
    for rest in itertools.combinations_with_replacement(range(b0, B + 1), m):
        betas = (b0,) + rest
        weight = _lattice_weight(ws, betas)
        if weight == 0.0:
            continue
        ladder = TerminationLadder(betas, kind)
        level = qw_rw_eval(kind, ladder, gamma, omega_low, z, eps_tilde, trunc).level_sums[m]
        term = weight * level
        total += term
        if betas[-1] == B:
            edge += abs(term)
    return total, edge


@timing_decorator
def genfunc_lhs_orders(kind: str, p: GchParams, ws: WeightSeq, x: float,
                       B: int = 25, n_cap: int = 1) -> Tuple[float, ...]:
    """左边按传递阶 m 的贡献 P_m·Σ_格点 权重·(c_0·第 m 层和)"""
    _check_orders(ws, n_cap)
    count = lattice_size(B, n_cap)
    if count > LATTICE_BUDGET:
        raise LatticeBudgetError(f"β 格点数 {count} 超过上限 {LATTICE_BUDGET:.0e}")
    lam = select_root(p, kind)
    dp = derive(p, lam)
    z = dp.z_of_x(x)
    eps_tilde, omega_low = dp.coupling(x)

    orders: List[float] = []
    edge_total = 0.0
    workers = min(thread_cap(), B + 1)
    for m in range(n_cap + 1):
        def run(b0, m=m):
            return _stripe(kind, p.gamma, omega_low, z, eps_tilde, ws, m, b0, B)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                parts = list(executor.map(run, range(B + 1)))
        else:
            parts = [run(b0) for b0 in range(B + 1)]
        orders.append(ws.tail_product(m) * math.fsum(part[0] for part in parts))
        edge_total += ws.tail_product(m) * sum(part[1] for part in parts)

    total = math.fsum(orders)
    if edge_total > TAIL_WARN_REL * max(abs(total), 1e-300):
        logger.warning("β 格点截断边界贡献偏大", B=B, edge=edge_total, value=total)
    return tuple(orders)


def genfunc_gch_lhs(kind: str, p: GchParams, ws: WeightSeq, x: float,
                    B: int = 25, n_cap: int = 1) -> float:
    """生成函数算子作用于 GCH 多项式（QW/RW），β 截断于 B"""
    return math.fsum(genfunc_lhs_orders(kind, p, ws, x, B, n_cap))


# ==================== 右边：嵌套积分 ====================

def contour_radius(ws: WeightSeq, n: int) -> float:
    """包住 v_j = s_{j,K}/(v_{j+1}⋯v_n) 各极点且 < 1 的半径"""
    reach = max(abs(ws.tail(j)) ** (1.0 / (n - j + 1)) for j in range(n + 1))
    return 0.5 * (1.0 + reach)


def _kernel_jets(kind: str, gamma: float, sigma0: float, per_contour: bool):
    """
    A(σ;W) = (1−σ)^{e} exp(−Wq)，q = σ/(1−σ)
    DA = −Wq·A，D²A = (−Wq + W²q²)·A
    per_contour 时 σ = σ0/(v_1⋯v_n)
    """
    exponent = _kernel_exponent(kind, gamma)

    def jets(Y, vprod, order):
        sigma = sigma0 / vprod if per_contour else np.full(Y.shape, sigma0, dtype=complex)
        q = sigma / (1.0 - sigma)
        A = (1.0 - sigma) ** exponent * np.exp(-Y * q)
        Wq = Y * q
        out = [A, -Wq * A, (-Wq + Wq * Wq) * A]
        return out[:order + 1]

    return jets


def _contour_levels(ws: WeightSeq, gamma: float, lam: float, omega_low, n: int,
                    spec: QuadratureSpec) -> List[LevelNodes]:
    line, circle = spec.node_counts(n)
    radius = contour_radius(ws, n)
    v, wv = nodes_for("origin", spec, n=circle, radius=radius)
    levels = []
    for j in range(1, n + 1):
        t_exp, u_exp = spec.jacobi_exponents(j, gamma, lam)
        t, wt = gauss_jacobi_interval(line, t_exp, 0.0)
        u, wu = gauss_jacobi_interval(line, u_exp, 0.0)
        s_tail = ws.tail(j)
        levels.append(tensor_level(
            t, wt, u, wu, v, wv,
            vweight=1.0 / (v * (1.0 - v)),
            expo_v=-v / (1.0 - v),
            op=_operator(j, omega_low, lam),
            vfactor=lambda vp, s=s_tail: 1.0 / (1.0 - s / vp),
            rho=radius,
        ))
    return levels


def _residue_levels(ws: WeightSeq, gamma: float, lam: float, omega_low, n: int,
                    spec: QuadratureSpec) -> List[LevelNodes]:
    """逐层留数收缩后的形式：中间层取 s_j，最高层取 s_{n,K}，不含 v 围道"""
    line, _ = spec.node_counts(n)
    levels = []
    for j in range(1, n + 1):
        s = ws.tail(j) if j == n else ws[j]
        t_exp, u_exp = spec.jacobi_exponents(j, gamma, lam)
        t, wt = gauss_jacobi_interval(line, t_exp, 0.0)
        u, wu = gauss_jacobi_interval(line, u_exp, 0.0)
        sv = np.array([s], dtype=complex)
        levels.append(tensor_level(
            t, wt, u, wu, sv, np.ones(1, dtype=complex),
            vweight=1.0 / (1.0 - sv),
            expo_v=-sv / (1.0 - sv),
            op=_operator(j, omega_low, lam),
            vtag_v=np.ones(1, dtype=complex),
            rho=max(abs(s), 1e-300),
        ))
    return levels


def _operator(level: int, omega_low, lam: float) -> Tuple[float, float]:
    if omega_low is None:
        return 0.0, 1.0
    return 1.0, 0.5 * (level - 1 + omega_low + lam)


@timing_decorator
def genfunc_rhs_orders(kind: str, p: GchParams, ws: WeightSeq, x: float, n_cap: int = 1,
                       spec: QuadratureSpec = None, collapse: str = "contour") -> Tuple[float, ...]:
    """右边按传递阶 n 的贡献 P_n·ε̃^n·H_n(z)（第二类另乘 z^{1−γ}）"""
    spec = spec or QuadratureSpec()
    _check_orders(ws, n_cap, MAX_RHS_ORDER)
    if collapse not in COLLAPSE_FORMS:
        raise DomainError(f"未知的收缩形式: {collapse}", module="genfunc")
    lam = select_root(p, kind)
    dp = derive(p, lam)
    z = dp.z_of_x(x)
    eps_tilde, omega_low = dp.coupling(x)
    gamma = p.gamma
    outer = second_kind_power(z, gamma) if kind == "second" else 1.0

    orders = [ws.tail_product(0) * genfunc_chp(kind, ws.tail(0), gamma, z) * outer]
    for n in range(1, n_cap + 1):
        if eps_tilde == 0.0:
            orders.append(0.0)
            continue
        if collapse == "contour":
            levels = _contour_levels(ws, gamma, lam, omega_low, n, spec)
            jets = _kernel_jets(kind, gamma, ws.tail(0), per_contour=True)
        else:
            levels = _residue_levels(ws, gamma, lam, omega_low, n, spec)
            jets = _kernel_jets(kind, gamma, ws[0], per_contour=False)
        h = nested_eval(levels, jets, complex(z), spec.chunk_size)
        logger.debug("生成函数右边层值", order=n, collapse=collapse, real=h.real, imag=h.imag)
        orders.append(ws.tail_product(n) * eps_tilde ** n * h.real * outer)
    return tuple(orders)


def genfunc_gch_rhs(kind: str, p: GchParams, ws: WeightSeq, x: float, n_cap: int = 1,
                    spec: QuadratureSpec = None, collapse: str = "contour") -> float:
    """生成函数恒等式右边，Σ_n 截断于 n_cap"""
    return math.fsum(genfunc_rhs_orders(kind, p, ws, x, n_cap, spec, collapse))
