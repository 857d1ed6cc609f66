"""
命令行入口：eval / verify / spectrum

退出码：0 成功，1 校验未通过，2 用法或定义域错误，3 数值不收敛
"""

import argparse
import logging
import os
import sys
from typing import Dict, List, Optional, Sequence

from core.frobenius import eval_series, frobenius_coeffs, graded_frobenius_coeffs
from core.params import GchParams, derive, select_root
from physics.apps import (
    confinement_energy,
    normalize_model,
    oscillator_eigenvalue,
    qdot_energy,
    wavefunction_eval,
)
from physics.models import ConfinementModel, OscillatorModel, QuantumDotModel
from trf.ladder import TerminationLadder, TrfTruncation, ladder_consistency, ladder_omegas
from trf.series import trf_infinite_eval, trf_polynomial_eval
from utils.config import LOG_DIR_ENV, LOG_LEVEL_ENV
from utils.errors import ConvergenceError, DomainError, GchError
from utils.logger_config import LoggerConfig, StructuredLogger
from verify.suites import SUITES, all_passed, run_suite
from .config import RunConfig, merge_config_file
from .output import FORMATS, make_table, write_table

logger = StructuredLogger(__name__)

VERSION = "0.1.0"
DEFAULT_N_MAX = 8

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3

EVAL_COLUMNS = ("x", "series_oracle", "trf_series", "abs_diff", "tail_estimate")
VERIFY_COLUMNS = ("check", "max_error", "tolerance", "passed", "gating")
SPECTRUM_COLUMNS = ("i", "beta", "eigenvalue")
WAVE_COLUMNS = ("i", "beta", "eigenvalue", "r", "psi")

MODEL_DEFAULTS: Dict[str, Dict[str, float]] = {
    "oscillator": {"lm": 0, "omega_c": 1.0},
    "confinement": {"mass": 1.0, "hbar": 1.0, "l": 0},
    "qdot": {"omega_c": 0.0, "sigma": 1.0, "m": 0, "mass": 1.0, "eps_inf": 1.0,
             "charge": 1.0, "hbar": 1.0},
}
MODEL_REQUIRED = {
    "oscillator": (),
    "confinement": ("a", "b", "c"),
    "qdot": ("omega",),
}


# ==================== 参数解析辅助 ====================

def parse_grid(values: Optional[Sequence[str]], name: str) -> List[float]:
    """--x 0.1,0.2 --x 0.3 形式的重复/逗号列表"""
    grid: List[float] = []
    for chunk in values or []:
        for token in chunk.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                grid.append(float(token))
            except ValueError:
                raise DomainError(f"{name} 中无法解析的数值: {token!r}", module="cli")
    return grid


def _require(args: argparse.Namespace, names: Sequence[str], command: str):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise DomainError(f"{command} 缺少参数: {flags}", module="cli")


def _run_config(args: argparse.Namespace, params: Dict, options: Dict) -> RunConfig:
    config = RunConfig(command=args.command, params=params, options=options,
                       fmt=args.format, output=args.output, seed=args.seed)
    logger.info("运行配置", command=config.command, seed=config.seed, fmt=config.fmt, version=VERSION)
    return config


def _emit(config: RunConfig, table):
    write_table(table, config.fmt, config.to_meta(VERSION), config.output)


# ==================== eval ====================

def _eval_params(args: argparse.Namespace) -> GchParams:
    _require(args, ("mu", "eps", "nu", "Omega", "omega"), "eval")
    return GchParams(mu=args.mu, eps=args.eps, nu=args.nu, omega_cap=args.Omega,
                     omega_low=args.omega, eps_omega=args.eps_omega)


def _eval_row(p: GchParams, lam: float, x: float, args: argparse.Namespace,
              trunc: TrfTruncation, ladder: Optional[TerminationLadder]) -> Dict[str, float]:
    if args.branch == "infinite":
        oracle = eval_series(frobenius_coeffs(p, lam, args.terms), x)
        trf = trf_infinite_eval(p, lam, x, trunc)
    else:
        omegas = ladder_omegas(ladder.betas[:trunc.n_max + 1], p.mu, lam)
        oracle = eval_series(graded_frobenius_coeffs(p, lam, args.terms, omegas).total, x)
        dp = derive(p, lam)
        eps_tilde, omega_low = dp.coupling(x)
        trf = trf_polynomial_eval(ladder, p.gamma, lam, omega_low, x, dp.z_of_x(x), eps_tilde, trunc)
    return {
        "x": x,
        "series_oracle": oracle.value,
        "trf_series": trf.value,
        "abs_diff": abs(oracle.value - trf.value),
        "tail_estimate": oracle.tail + trf.tail,
    }


def cmd_eval(args: argparse.Namespace) -> int:
    """Frobenius 参照解与 3TRF 级数在 x 网格上的对照表"""
    p = _eval_params(args)
    grid = parse_grid(args.x, "--x")
    if not grid:
        raise DomainError("eval 至少需要一个 --x", module="cli")
    if args.terms < 0:
        raise DomainError(f"--terms 必须非负，收到 {args.terms}", module="cli")
    ladder = None
    n_max = DEFAULT_N_MAX if args.n_max is None else args.n_max
    if args.branch == "polynomial":
        if not args.ladder:
            raise DomainError("多项式分支需要 --ladder", module="cli")
        ladder = TerminationLadder.parse(args.ladder, args.kind)
        if args.n_max is None:
            n_max = len(ladder) - 1
    trunc = TrfTruncation(n_max=n_max, inner_max=args.inner_max)

    lam = select_root(p, args.kind)
    if args.branch == "polynomial" and p.mu != 0.0:
        report = ladder_consistency(p, lam, len(ladder))
        logger.info("终止阶梯一致性", consistent=report.consistent, values=list(report.values))

    config = _run_config(
        args,
        params={"mu": p.mu, "eps": p.eps, "nu": p.nu, "Omega": p.omega_cap,
                "omega": p.omega_low, "eps_omega": p.eps_omega},
        options={"kind": args.kind, "branch": args.branch, "ladder": args.ladder,
                 "n_max": trunc.n_max, "inner_max": trunc.inner_max, "terms": args.terms, "x": grid},
    )
    rows = [_eval_row(p, lam, x, args, trunc, ladder) for x in grid]
    _emit(config, make_table(rows, EVAL_COLUMNS))
    unconverged = [r["x"] for r in rows if not r["tail_estimate"] <= abs(r["trf_series"])]
    if unconverged:
        logger.error("截断尾项超过级数值，结果未收敛", x=unconverged,
                     n_max=trunc.n_max, inner_max=trunc.inner_max)
        return EXIT_CONVERGENCE
    return EXIT_OK


# ==================== verify ====================

def cmd_verify(args: argparse.Namespace) -> int:
    """运行性质校验套件，逐项输出 (check, max_error, tolerance, passed, gating)"""
    config = _run_config(args, params={}, options={"suite": args.suite})
    results = run_suite(args.suite, args.seed)
    rows = [{"check": r.name, "max_error": r.max_error, "tolerance": r.tolerance,
             "passed": r.passed, "gating": r.gating} for r in results]
    _emit(config, make_table(rows, VERIFY_COLUMNS))
    passed = all_passed(results)
    if not passed:
        failed = [r.name for r in results if r.gating and not r.passed]
        logger.error("校验未通过", suite=args.suite, failed=failed)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


# ==================== spectrum ====================

def _model_values(args: argparse.Namespace) -> Dict[str, float]:
    values = dict(MODEL_DEFAULTS[args.model])
    _require(args, MODEL_REQUIRED[args.model], f"spectrum {args.model}")
    for key in ("lm", "omega", "omega_c", "a", "b", "c", "mass", "hbar", "l",
                "sigma", "m", "eps_inf", "charge"):
        value = getattr(args, key, None)
        if value is not None:
            values[key] = value
    return values


def build_model(name: str, v: Dict[str, float]):
    if name == "oscillator":
        return OscillatorModel(l_m=int(v["lm"]), omega_c=v["omega_c"])
    if name == "confinement":
        return ConfinementModel.from_potential(a=v["a"], b=v["b"], c=v["c"], mass=v["mass"],
                                               hbar=v["hbar"], l=int(v["l"]))
    if name == "qdot":
        return QuantumDotModel(eff_mass=v["mass"], omega_conf=v["omega"], omega_cyc=v["omega_c"],
                               sigma=v["sigma"], m_quantum=int(v["m"]), eps_inf=v["eps_inf"],
                               charge=v["charge"], hbar=v["hbar"])
    raise DomainError(f"未知的模型: {name}", module="cli")


def eigenvalue_for(model, i: int, beta: int) -> float:
    if isinstance(model, OscillatorModel):
        return oscillator_eigenvalue(model, i, beta)
    if isinstance(model, ConfinementModel):
        return confinement_energy(model, i, beta)
    return qdot_energy(model, i, beta)


def default_r_max(model) -> float:
    if isinstance(model, OscillatorModel):
        return 12.0 + 4.0 * model.omega_c
    return 12.0


def _wave_rows(model, i: int, beta: int, eigenvalue: float, r_grid: List[float],
               r_max: float) -> List[Dict[str, float]]:
    """阶梯 β_0 = … = β_i = β、截断 n_max = i 的归一化波函数采样"""
    ladder = TerminationLadder((beta,) * (i + 1))
    norm = normalize_model(model, ladder, r_max)
    return [{"i": i, "beta": beta, "eigenvalue": eigenvalue, "r": r,
             "psi": norm * wavefunction_eval(model, ladder, r)} for r in r_grid]


def cmd_spectrum(args: argparse.Namespace) -> int:
    """(i, β) 网格上的本征值表，可选归一化波函数采样"""
    values = _model_values(args)
    model = build_model(args.model, values)
    r_grid = parse_grid(args.r_grid, "--r-grid")
    if any(r <= 0.0 for r in r_grid):
        raise DomainError("--r-grid 的采样点必须 > 0", module="cli")
    r_max = args.r_max if args.r_max is not None else default_r_max(model)

    config = _run_config(
        args,
        params={"model": args.model, **values},
        options={"imax": args.imax, "bmax": args.bmax, "r_grid": r_grid, "r_max": r_max},
    )
    rows: List[Dict[str, float]] = []
    for i in range(args.imax + 1):
        for beta in range(args.bmax + 1):
            eigenvalue = eigenvalue_for(model, i, beta)
            if r_grid:
                rows.extend(_wave_rows(model, i, beta, eigenvalue, r_grid, r_max))
            else:
                rows.append({"i": i, "beta": beta, "eigenvalue": eigenvalue})
    _emit(config, make_table(rows, WAVE_COLUMNS if r_grid else SPECTRUM_COLUMNS))
    return EXIT_OK


# ==================== 解析器 ====================

def common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv", help="输出格式")
    common.add_argument("--output", default=None, help="输出文件，缺省写到 stdout")
    common.add_argument("--config", default=None, help="key=value 配置文件，命令行参数优先")
    common.add_argument("--seed", type=int, default=0, help="随机校验网格的种子")
    common.add_argument("--verbose", action="store_true", help="DEBUG 级别日志")
    common.add_argument("--log-file", action="store_true", help="同时写日志文件")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = common_parser()
    parser = argparse.ArgumentParser(prog="gchkit", description="GCH 方程的 3TRF 级数、积分表示与生成函数")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="3TRF 级数与 Frobenius 参照解对照")
    p_eval.add_argument("--mu", type=float)
    p_eval.add_argument("--eps", type=float)
    p_eval.add_argument("--nu", type=float)
    p_eval.add_argument("--Omega", type=float)
    p_eval.add_argument("--omega", type=float)
    p_eval.add_argument("--eps-omega", type=float, default=None, help="ε=0 时显式给定 εω")
    p_eval.add_argument("--kind", choices=("first", "second"), default="first")
    p_eval.add_argument("--branch", choices=("infinite", "polynomial"), default="infinite")
    p_eval.add_argument("--ladder", default=None, help='终止阶梯，如 "1,1,2"')
    p_eval.add_argument("--n-max", type=int, default=None, help="缺省：无穷分支 8，多项式分支为阶梯长度 − 1")
    p_eval.add_argument("--inner-max", type=int, default=60)
    p_eval.add_argument("--terms", type=int, default=40, help="Frobenius 参照解的截断阶")
    p_eval.add_argument("--x", action="append", help="求值点，可重复或逗号分隔")
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", parents=[common], help="运行性质校验套件")
    p_verify.add_argument("suite", choices=tuple(SUITES) + ("all",))
    p_verify.set_defaults(func=cmd_verify)

    p_spec = sub.add_parser("spectrum", parents=[common], help="本征值阶梯与波函数采样")
    p_spec.add_argument("model", choices=tuple(MODEL_DEFAULTS))
    p_spec.add_argument("--imax", type=int, default=0)
    p_spec.add_argument("--bmax", type=int, default=0, help="负值得到空表")
    p_spec.add_argument("--lm", type=int, default=None)
    p_spec.add_argument("--omega", type=float, default=None)
    p_spec.add_argument("--omega-c", type=float, default=None)
    p_spec.add_argument("--a", type=float, default=None)
    p_spec.add_argument("--b", type=float, default=None)
    p_spec.add_argument("--c", type=float, default=None)
    p_spec.add_argument("--mass", type=float, default=None)
    p_spec.add_argument("--hbar", type=float, default=None)
    p_spec.add_argument("--l", type=int, default=None)
    p_spec.add_argument("--sigma", type=float, default=None)
    p_spec.add_argument("--m", type=int, default=None)
    p_spec.add_argument("--eps-inf", type=float, default=None)
    p_spec.add_argument("--charge", type=float, default=None)
    p_spec.add_argument("--r-grid", action="append", help="波函数采样点，可重复或逗号分隔")
    p_spec.add_argument("--r-max", type=float, default=None, help="归一化积分上限")
    p_spec.set_defaults(func=cmd_spectrum)
    return parser


def _init_logging(args: argparse.Namespace):
    if args.verbose:
        level = logging.DEBUG
    else:
        level = logging.getLevelName(os.getenv(LOG_LEVEL_ENV, "INFO").upper())
        if not isinstance(level, int):
            level = logging.INFO
    LoggerConfig.init_logger(log_dir=os.getenv(LOG_DIR_ENV), log_level=level,
                             console_output=True, file_output=args.log_file)
    LoggerConfig.set_level(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        known, _ = common_parser().parse_known_args(argv)
        args = parser.parse_args(merge_config_file(argv, known.config))
    except DomainError as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_DOMAIN

    _init_logging(args)
    try:
        return int(args.func(args))
    except DomainError as e:
        logger.error("参数或定义域错误", module=e.module, message=str(e))
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as e:
        logger.error("数值不收敛", module=e.module, message=str(e))
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except GchError as e:
        logger.error("未分类的 gchkit 错误", module=e.module, message=str(e))
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_DOMAIN
