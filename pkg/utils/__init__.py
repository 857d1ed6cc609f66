"""
工具模块
包含日志配置、异常层次、补偿求和与环境配置
"""

from .logger_config import LoggerConfig, StructuredLogger, get_logger
from .errors import (
    GchError,
    DomainError,
    ResonanceError,
    DegenerateRootError,
    PoleError,
    TrfSizeError,
    LadderError,
    ContourBranchError,
    DimensionError,
    LatticeBudgetError,
    ConvergenceError,
    KummerConvergenceError,
    QuadratureError,
    NormalizationTailError,
)
from .summation import KahanAccumulator, compensated_sum, two_sum
from .config import thread_cap, load_config_file
from .timing import timing_decorator

__all__ = [
    # 日志
    'LoggerConfig',
    'StructuredLogger',
    'get_logger',

    # 异常
    'GchError',
    'DomainError',
    'ResonanceError',
    'DegenerateRootError',
    'PoleError',
    'TrfSizeError',
    'LadderError',
    'ContourBranchError',
    'DimensionError',
    'LatticeBudgetError',
    'ConvergenceError',
    'KummerConvergenceError',
    'QuadratureError',
    'NormalizationTailError',

    # 数值工具
    'KahanAccumulator',
    'compensated_sum',
    'two_sum',

    # 配置
    'thread_cap',
    'load_config_file',
    'timing_decorator',
]
