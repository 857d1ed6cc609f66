"""GCH 方程参数模型、Frobenius 递推与残差"""

from .params import (
    BchCanonicalParams,
    DerivedParams,
    GchParams,
    IndicialRoots,
    bch_residual,
    bch_to_gch,
    derive,
    indicial_roots,
    select_root,
)
from .frobenius import (
    DEFAULT_TERMS,
    GradedCoeffs,
    SeriesCoeffs,
    SeriesValue,
    eval_series,
    eval_series_derivatives,
    frobenius_coeffs,
    graded_frobenius_coeffs,
    ode_residual,
    series_residual,
)

__all__ = [
    # 参数
    'BchCanonicalParams',
    'DerivedParams',
    'GchParams',
    'IndicialRoots',
    'bch_residual',
    'bch_to_gch',
    'derive',
    'indicial_roots',
    'select_root',

    # 递推与求值
    'DEFAULT_TERMS',
    'GradedCoeffs',
    'SeriesCoeffs',
    'SeriesValue',
    'eval_series',
    'eval_series_derivatives',
    'frobenius_coeffs',
    'graded_frobenius_coeffs',
    'ode_residual',
    'series_residual',
]
