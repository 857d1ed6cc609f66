"""
性质校验套件

每个套件返回 CheckResult 列表；随机网格由 numpy.random.default_rng(seed) 生成，
同一 seed 的报告逐字节一致。
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List

import mpmath
import numpy as np

from core.frobenius import eval_series, eval_series_derivatives, frobenius_coeffs, graded_frobenius_coeffs, ode_residual
from core.params import GchParams, bch_residual
from genfunc.generating import genfunc_chp, genfunc_gch_lhs, genfunc_gch_rhs, genfunc_rhs_orders
from genfunc.weights import WeightSeq, geometric_tail
from integral.contour import QuadratureSpec, chp_contour, kummer_contour
from integral.identities import verify_kj, verify_qj
from integral.nested import integral_rep_eval
from kernels.scalar import beta_verify, chp_eval, erf, kummer_m_detailed, pochhammer
from physics.apps import (
    asymptotic_diagnostic,
    boundary_limit,
    confinement_energy,
    confinement_radial_residual,
    normalize,
    normalize_model,
    oscillator_eigenvalue,
    oscillator_radial_residual,
    qdot_bch_params,
    qdot_energy,
    qdot_gch_params,
    qdot_radial_residual,
    wavefunction_eval,
)
from physics.models import ConfinementModel, OscillatorModel, QuantumDotModel
from trf.ladder import TerminationLadder, TrfTruncation, ladder_omegas
from trf.series import (
    a_factor,
    qw_rw_eval,
    trf_coefficients_infinite,
    trf_coefficients_polynomial,
    trf_infinite_eval,
)
from utils.errors import DomainError, GchError
from utils.logger_config import StructuredLogger
from utils.timing import timing_decorator

logger = StructuredLogger(__name__)

EPS = np.finfo(float).eps
SPECTRAL_FLOOR = 1e-10  # 粗网格误差低于此值时不再比较收敛比


# ==================== 数据类定义 ====================

@dataclass(frozen=True)
class CheckResult:
    """单项校验结果；gating=False 的诊断项不影响退出码"""
    name: str
    max_error: float
    tolerance: float
    passed: bool
    gating: bool = True


def check(name: str, errors: Iterable[float], tolerance: float, gating: bool = True) -> CheckResult:
    values = [float(e) for e in errors]
    worst = max(values) if values else 0.0
    if any(math.isnan(v) for v in values):
        worst = math.inf
    return CheckResult(name, worst, tolerance, bool(worst <= tolerance), gating)


def _rel(a: float, b: float, floor: float = 1e-300) -> float:
    return abs(a - b) / max(abs(b), floor)


def _away_from_nonpositive_int(x: float, margin: float = 0.05) -> bool:
    return x > 0 or abs(x - round(x)) > margin


def _random_params(rng: np.random.Generator, eps_zero: bool = False) -> GchParams:
    """|系数| ≤ 3、非共振、μ ≠ 0 的随机参数"""
    while True:
        mu, eps, nu, omega_cap, omega_low = rng.uniform(-3.0, 3.0, size=5)
        if abs(mu) < 0.1 or not _away_from_nonpositive_int(nu):
            continue
        return GchParams(mu, 0.0 if eps_zero else eps, nu, omega_cap, omega_low)


def _kummer_params(rng: np.random.Generator) -> GchParams:
    """ε=0，|μ| ≥ 0.5，ν ∈ [0.2, 3]"""
    mu = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 3.0))
    nu, omega_cap, omega_low = rng.uniform(0.2, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)
    return GchParams(mu, 0.0, nu, omega_cap, omega_low)


# ==================== kernels ====================

def suite_kernels(rng: np.random.Generator) -> List[CheckResult]:
    results = []

    errors = []
    for _ in range(50):
        x = rng.uniform(-5.0, 5.0)
        if abs(x - round(x)) < 0.01:
            continue
        m, n = (int(v) for v in rng.integers(0, 21, size=2))
        whole = pochhammer(x, m + n)
        errors.append(_rel(pochhammer(x, m) * pochhammer(x + m, n), whole))
    results.append(check("pochhammer 乘法律", errors, 1e-12))

    errors = []
    for p, q in rng.uniform(0.1, 8.0, size=(30, 2)):
        closed, quad = beta_verify(p, q)
        errors.append(_rel(quad, closed))
    results.append(check("Beta 闭式与 Gauss–Jacobi", errors, 1e-12))

    # |err| ≤ 1e-12|ref| + 64·eps·Σ|项|，报告与界之比
    errors = []
    for a, b, z in zip(rng.uniform(-5.0, 5.0, 40), rng.uniform(0.2, 5.0, 40), rng.uniform(-10.0, 10.0, 40)):
        res = kummer_m_detailed(a, b, z)
        ref = float(mpmath.hyp1f1(a, b, z))
        errors.append(abs(res.value - ref) / (1e-12 * abs(ref) + 64.0 * EPS * res.abs_sum))
    results.append(check("Kummer M 与 mpmath 参照", errors, 1.0))

    errors = [_rel(chp_eval("first", d, g, 0.0), pochhammer(g, d))
              for d in range(6) for g in (0.5, 1.0, 1.5, 2.5)]
    results.append(check("F_β(γ;0) = (γ)_β", errors, 1e-15))

    errors = [abs(erf(1.0) - 0.8427007929497149), abs(erf(6.0) - 1.0), abs(erf(0.0))]
    results.append(check("erf 参考值", errors, 1e-14))
    return results


# ==================== series ====================

def suite_series(rng: np.random.Generator) -> List[CheckResult]:
    results = []

    errors = []
    trunc = TrfTruncation(n_max=20, inner_max=10)
    for _ in range(50):
        p = _random_params(rng)
        ref = frobenius_coeffs(p, 0.0, 20).coeffs
        got = trf_coefficients_infinite(p, 0.0, trunc, 20)
        # 抵消得到的小系数按 1e-4·max|c| 为下限计相对误差
        floor = 1e-4 * max(abs(c) for c in ref)
        errors.extend(_rel(g, r, floor) for g, r in zip(got, ref))
    results.append(check("3TRF 无穷分支系数 = Frobenius 递推", errors, 1e-10))

    errors = []
    for _ in range(10):
        p = _random_params(rng, eps_zero=True)
        coeffs = trf_coefficients_infinite(p, 0.0, trunc, 20)
        errors.extend(abs(c) for c in coeffs[1::2])
    results.append(check("ε=0 时奇次系数为零", errors, 0.0))

    # 相对误差以 0.05 为下限，避开 M 的零点附近
    errors_first, errors_second = [], []
    for _ in range(20):
        p = _kummer_params(rng)
        x = rng.uniform(0.05, 0.6)
        z = -0.5 * p.mu * x * x
        a = p.omega_cap / (2.0 * p.mu)
        ref = kummer_m_detailed(a, p.gamma, z).value
        errors_first.append(_rel(trf_infinite_eval(p, 0.0, x, TrfTruncation(0, 60)).value, ref, 0.05))
        errors_first.append(_rel(eval_series(frobenius_coeffs(p, 0.0, 60), x).value, ref, 0.05))
        if _away_from_nonpositive_int(2.0 - p.gamma) and abs(1.0 - p.nu) > 0.05:
            lam = 1.0 - p.nu
            ref2 = kummer_m_detailed(a + 1.0 - p.gamma, 2.0 - p.gamma, z).value
            value = trf_infinite_eval(p, lam, x, TrfTruncation(0, 60)).value / x ** lam
            errors_second.append(_rel(value, ref2, 0.05))
    results.append(check("ε=0 第一类化为 M(Ω/2μ, γ, z)", errors_first, 1e-11))
    results.append(check("ε=0 第二类化为 M(Ω/2μ+1−γ, 2−γ, z)", errors_second, 1e-11))

    errors = []
    for _ in range(200):
        p = _random_params(rng)
        sc = frobenius_coeffs(p, 0.0, 40)
        for x in (-0.3, -0.2, -0.1, -0.05, 0.05, 0.1, 0.2, 0.3):
            y, y1, y2 = eval_series_derivatives(sc, x)
            errors.append(abs(ode_residual(p, y, y1, y2, x)) / max(1.0, abs(y)))
    results.append(check("40 阶截断级数的 ODE 残差", errors, 1e-9))

    p = GchParams(mu=-2.0, eps=0.3, nu=2.0, omega_cap=8.0, omega_low=1.0)
    ladder = TerminationLadder((2, 2, 3, 3, 4))
    got = trf_coefficients_polynomial(ladder, p, 0.0, TrfTruncation(n_max=4, inner_max=4), 8)
    ref = graded_frobenius_coeffs(p, 0.0, 8, ladder_omegas(ladder.betas, p.mu, 0.0)).total.coeffs
    floor = 1e-4 * max(abs(c) for c in ref)
    results.append(check("多项式分支系数 = 分层递推", [_rel(g, r, floor) for g, r in zip(got, ref)], 1e-10))
    return results


# ==================== kj / qj ====================

def suite_kj(rng: np.random.Generator) -> List[CheckResult]:
    errors = []
    for j in (1, 2, 3):
        for beta_j in (1, 2, 3):
            for z in (0.3, 0.7, 1.2):
                gamma = float(rng.choice([1.0, 1.5, 2.5]))
                i_prev = int(rng.integers(0, beta_j + 1))
                lhs, rhs = verify_kj(j, 0.0, gamma, beta_j, i_prev, z)
                errors.append(abs(lhs - rhs) / (1.0 + abs(lhs)))
    return [check("K_j 有限和 = 三重求积 (27 点)", errors, 1e-8)]


def _qj_params(target: float, j: int, gamma: float) -> GchParams:
    """构造 Ω/(2μ) + j/2 = target 的参数（μ=−2，λ=0）"""
    mu = -2.0
    return GchParams(mu=mu, eps=0.0, nu=2.0 * gamma - 1.0, omega_cap=2.0 * mu * (target - 0.5 * j), omega_low=0.0)


def suite_qj(rng: np.random.Generator) -> List[CheckResult]:
    integer_errors, general_errors = [], []
    for target, gamma, z in ((1.0, 1.5, 0.2), (2.0, 1.5, 0.4), (3.0, 1.0, 0.3), (1.0, 2.5, 0.6)):
        j = int(rng.integers(1, 3))
        lhs, rhs = verify_qj(j, _qj_params(target, j, gamma), 0.0, 0, z)
        integer_errors.append(abs(lhs - rhs) / (1.0 + abs(lhs)))
    for _ in range(4):
        target = float(rng.uniform(0.2, 2.8))
        j = int(rng.integers(1, 3))
        lhs, rhs = verify_qj(j, _qj_params(target, j, 1.5), 0.0, int(rng.integers(0, 3)), float(rng.uniform(0.1, 0.8)))
        general_errors.append(abs(lhs - rhs) / (1.0 + abs(lhs)))
    return [
        check("Q_j 整数幂次点", integer_errors, 1e-7),
        check("Q_j 非整数幂次（v=1 围道）", general_errors, 1e-7),
    ]


# ==================== integral ====================

def _chp_contour_errors(nodes: int = 128) -> List[float]:
    spec = QuadratureSpec(circle_nodes=nodes)
    errors = []
    for kind, gammas in (("first", (1.0, 1.5, 2.5)), ("second", (0.5, 1.5, 0.25))):
        for gamma in gammas:
            for degree in range(5):
                for z in (-2.0, -0.5, 0.5, 2.0):
                    ref = chp_eval(kind, degree, gamma, z)
                    errors.append(abs(chp_contour(kind, degree, gamma, z, spec) - ref) / max(1.0, abs(ref)))
    return errors


def _kummer_contour_errors() -> List[float]:
    errors = []
    for z in (-1.0, 0.5, 1.5):
        for b in (1.0, 2.0, 3.0):
            ref = lambda a: kummer_m_detailed(a, b, z).value
            for a in (-3.0, -2.0, -1.0):
                errors.append(_rel(kummer_contour("origin", a, b, z), ref(a), 1.0))
            for a in (-2.0, -1.0, 1.0, 2.0):
                errors.append(_rel(kummer_contour("large", a, b, z), ref(a), 1.0))
                if pochhammer(1.0 - a, int(b) - 1) != 0.0:
                    errors.append(_rel(kummer_contour("unit", a, b, z), ref(a), 1.0))
    return errors


def _rep_points():
    """(名称, kind, branch, 参数, x, n_cap, 阶梯, 参照值)"""
    poly_first = GchParams(mu=-2.0, eps=-1.0, nu=2.0, omega_cap=0.0, omega_low=0.8)
    poly_second = GchParams(mu=-2.0, eps=-1.0, nu=0.5, omega_cap=0.0, omega_low=0.8)
    inf_first = GchParams(mu=-2.0, eps=0.3, nu=1.4, omega_cap=1.0, omega_low=0.6)
    inf_second = GchParams(mu=-2.0, eps=0.3, nu=0.6, omega_cap=1.0, omega_low=0.6)

    def qw(kind, p, ladder, x, n):
        z, et = -0.5 * p.mu * x * x, -0.5 * p.eps * x
        return qw_rw_eval(kind, ladder, p.gamma, p.omega_low, z, et, TrfTruncation(n_max=n)).value

    def inf(kind, p, x, n):
        lam = 0.0 if kind == "first" else 1.0 - p.nu
        return trf_infinite_eval(p, lam, x, TrfTruncation(n_max=n, inner_max=60)).value

    l11, l23, l12 = TerminationLadder((1, 1)), TerminationLadder((2, 3)), TerminationLadder((1, 2), "second")
    return [
        ("QW β=(1,1) n=1", "first", "polynomial", poly_first, 0.5, 1, l11, qw("first", poly_first, l11, 0.5, 1)),
        ("QW β=(2,3) n=1", "first", "polynomial", poly_first, 0.6, 1, l23, qw("first", poly_first, l23, 0.6, 1)),
        ("RW ψ=(1,2) n=1", "second", "polynomial", poly_second, 0.5, 1, l12, qw("second", poly_second, l12, 0.5, 1)),
        ("无穷第一类 n=0", "first", "infinite", inf_first, 0.3, 0, None, inf("first", inf_first, 0.3, 0)),
        ("无穷第一类 n=1", "first", "infinite", inf_first, 0.3, 1, None, inf("first", inf_first, 0.3, 1)),
        ("无穷第二类 n=1", "second", "infinite", inf_second, 0.4, 1, None, inf("second", inf_second, 0.4, 1)),
    ]


def suite_integral(rng: np.random.Generator) -> List[CheckResult]:
    results = [check("合流超几何多项式的围道形式 (128 节点)", _chp_contour_errors(), 1e-10)]

    coarse = _chp_contour_errors(16)
    fine = _chp_contour_errors(32)
    ratios = [f / c if c > SPECTRAL_FLOOR else 0.0 for c, f in zip(coarse, fine)]
    results.append(check("围道梯形谱收敛 (节点加倍误差比)", ratios, 1e-2))

    results.append(check("Kummer M 三种围道形式", _kummer_contour_errors(), 1e-9))

    errors = []
    for name, kind, branch, p, x, n_cap, ladder, ref in _rep_points():
        got = integral_rep_eval(kind, branch, p, x, n_cap, ladder=ladder)
        logger.debug("积分表示对照", point=name, got=got, ref=ref)
        errors.append(abs(got - ref))
    results.append(check("积分表示 = 级数部分和 (n_cap ≤ 1)", errors, 1e-7))

    p = GchParams(mu=-2.0, eps=0.3, nu=1.4, omega_cap=1.0, omega_low=0.6)
    got = integral_rep_eval("first", "infinite", p, 0.3, 2)
    ref = trf_infinite_eval(p, 0.0, 0.3, TrfTruncation(n_max=2, inner_max=60)).value
    results.append(check("积分表示 n_cap=2 冒烟点", [abs(got - ref)], 1e-6))
    return results


# ==================== genfunc ====================

def _chp_genfunc_errors() -> List[float]:
    errors = []
    for kind, gammas in (("first", (0.5, 1.0, 1.5, 2.5)), ("second", (0.5, 1.5))):
        for gamma in gammas:
            for t in (-0.5, 0.3, 0.5):
                for z in (-2.0, 0.7, 2.0):
                    terms = (t ** b / math.factorial(b) * chp_eval(kind, b, gamma, z) for b in range(151))
                    ref = math.fsum(terms)
                    errors.append(abs(genfunc_chp(kind, t, gamma, z) - ref) / max(1.0, abs(ref)))
    return errors


def genfunc_points():
    """(kind, 参数, 权重, x, n_cap)：支撑为 2 的权重，|s| ≤ 0.3"""
    first = GchParams(mu=-2.0, eps=-1.0, nu=2.0, omega_cap=0.0, omega_low=0.8)
    second = GchParams(mu=-2.0, eps=-1.0, nu=0.5, omega_cap=0.0, omega_low=0.8)
    ws = WeightSeq((0.2, 0.25))
    return [
        ("first", first, ws, 0.4, 0),
        ("first", first, ws, 0.4, 1),
        ("second", second, ws, 0.4, 0),
        ("second", second, ws, 0.4, 1),
        ("first", first, WeightSeq((-0.3, 0.15)), 0.7, 1),
    ]


def suite_genfunc(rng: np.random.Generator) -> List[CheckResult]:
    results = [check("F_β / A_ψ 生成函数核", _chp_genfunc_errors(), 1e-12)]

    errors = []
    for s in np.linspace(-0.9, 0.9, 7):
        start = int(rng.integers(0, 5))
        direct = math.fsum(s ** b for b in range(start, start + 700))
        errors.append(abs(geometric_tail(float(s), start) - direct))
    results.append(check("几何级数闭式", errors, 1e-13))

    errors = []
    for kind, p, ws, x, n_cap in genfunc_points():
        lhs = genfunc_gch_lhs(kind, p, ws, x, B=25, n_cap=n_cap)
        rhs = genfunc_gch_rhs(kind, p, ws, x, n_cap)
        errors.append(abs(lhs - rhs) / max(1.0, abs(lhs)))
    results.append(check("GCH 生成函数左 = 右 (n_cap ≤ 1)", errors, 1e-8))

    # z=0：核只剩 (1−s)^{−γ} 与各层乘积
    p = GchParams(mu=0.0, eps=-1.0, nu=2.0, omega_cap=0.0, omega_low=0.8)
    ws = WeightSeq((0.2, 0.25))
    orders = genfunc_rhs_orders("first", p, ws, 0.4, 1)
    eps_tilde = 0.2
    expected = [
        (1.0 - ws.tail(0)) ** -p.gamma / (1.0 - ws.tail(1)),
        eps_tilde * a_factor(0, 0, p.gamma, 0.0, p.omega_low) * (1.0 - ws.tail(0)) ** -p.gamma / (1.0 - ws.tail(1)),
    ]
    results.append(check("z=0 时右边只剩 (1−s) 幂次因子",
                         [abs(o - e) for o, e in zip(orders, expected)], 1e-10))

    p = GchParams(mu=-2.0, eps=-1.0, nu=2.0, omega_cap=0.0, omega_low=0.8)
    ws3 = WeightSeq((0.2, 0.25, 0.3))
    lhs = genfunc_gch_lhs("first", p, ws3, 0.3, B=25, n_cap=2)
    rhs = genfunc_gch_rhs("first", p, ws3, 0.3, 2)
    results.append(check("GCH 生成函数 n_cap=2 冒烟点", [abs(lhs - rhs) / max(1.0, abs(lhs))], 1e-6))
    return results


# ==================== apps ====================

def suite_apps(rng: np.random.Generator) -> List[CheckResult]:
    results = []
    osc = OscillatorModel(l_m=int(rng.integers(0, 4)), omega_c=float(rng.uniform(0.5, 2.0)))
    conf = ConfinementModel.from_potential(a=1.0, b=0.5, c=0.5, l=int(rng.integers(0, 3)))
    qdot = QuantumDotModel(eff_mass=1.0, omega_conf=1.0, omega_cyc=0.5, sigma=1.0,
                           m_quantum=int(rng.integers(-2, 3)), eps_inf=1.0, charge=0.5)

    errors = []
    for i in range(3):
        for beta in range(4):
            errors.append(abs(oscillator_eigenvalue(osc, i, beta + 1) - oscillator_eigenvalue(osc, i, beta) - 2.0))
            de = confinement_energy(conf, i, beta + 1) - confinement_energy(conf, i, beta)
            errors.append(_rel(de, 2.0 * conf.hbar ** 2 * conf.alpha_F / conf.mass))
            de = qdot_energy(qdot, i, beta + 1) - qdot_energy(qdot, i, beta)
            errors.append(_rel(de, 2.0 * qdot.hbar * qdot.omega_conf))
    results.append(check("本征值阶梯的等间距", errors, 1e-12))

    errors = []
    for r in (0.3, 0.8, 1.5):
        for i, beta in ((0, 0), (1, 2)):
            res = oscillator_radial_residual(osc, i, beta, r)
            errors.append(abs(res.residual) / res.scale)
            res = confinement_radial_residual(conf, i, beta, r)
            errors.append(abs(res.residual) / res.scale)
            res = qdot_radial_residual(qdot, i, beta, r)
            errors.append(abs(res.residual) / res.scale)
    results.append(check("GCH 解经代换满足径向方程", errors, 1e-8))

    errors = []
    for y, y1, y2, x in rng.uniform(-2.0, 2.0, size=(10, 4)):
        p = qdot_gch_params(qdot, 1, 1)
        b = qdot_bch_params(qdot, 1, 1)
        errors.append(abs(ode_residual(p, y, y1, y2, x) - bch_residual(b, y, y1, y2, x)))
    results.append(check("量子点参数与 BCH 标准形一致", errors, 1e-12))

    ladder = TerminationLadder((1, 2))
    errors = [boundary_limit(m, ladder).rel_error for m in (osc, conf, qdot)]
    results.append(check("r→0⁺ 边界行为 (Richardson)", errors, 1e-6))

    errors = []
    for model, r_max in ((osc, 12.0 + 4.0 * osc.omega_c), (conf, 10.0), (qdot, 10.0)):
        n = normalize_model(model, ladder, r_max)
        again = normalize(lambda r, m=model, n=n: n * wavefunction_eval(m, ladder, r), r_max, measure=model.measure)
        errors.append(abs(again - 1.0))
    results.append(check("归一化幂等", errors, 1e-10))

    report = asymptotic_diagnostic()
    results.append(CheckResult("渐近式诊断 (x=1.5，不作判定)", report.rel_diff, 0.2,
                               report.within_tolerance, gating=False))
    return results


# ==================== 调度 ====================

SUITES: Dict[str, Callable[[np.random.Generator], List[CheckResult]]] = {
    "kernels": suite_kernels,
    "series": suite_series,
    "kj": suite_kj,
    "qj": suite_qj,
    "integral": suite_integral,
    "genfunc": suite_genfunc,
    "apps": suite_apps,
}


@timing_decorator
def run_suite(name: str, seed: int = 0) -> List[CheckResult]:
    """运行指定套件；all 依次运行全部，每个套件使用独立的同 seed 随机源"""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise DomainError(f"未知的校验套件: {name}", module="cli")

    results: List[CheckResult] = []
    for suite in names:
        rng = np.random.default_rng(seed)
        try:
            part = SUITES[suite](rng)
        except GchError as exc:
            logger.error("校验套件异常", suite=suite, error=str(exc))
            part = [CheckResult(f"{suite} 套件异常: {type(exc).__name__}: {exc}", math.inf, 0.0, False)]
        for r in part:
            logger.info("校验结果", suite=suite, check=r.name, max_error=r.max_error,
                        tolerance=r.tolerance, passed=r.passed, gating=r.gating)
        results.extend(part)
    return results


def all_passed(results: List[CheckResult]) -> bool:
    return all(r.passed for r in results if r.gating)
