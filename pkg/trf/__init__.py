"""3TRF 嵌套级数：多项式分支、无穷级数分支、QW/RW 与系数提取"""

from .ladder import (
    LadderReport,
    TerminationLadder,
    TrfTruncation,
    ladder_consistency,
    ladder_omegas,
)
from .series import (
    TrfValue,
    a_factor,
    b_factor,
    infinite_normalization,
    nested_tuple_count,
    qw_rw_eval,
    second_kind_power,
    table_cell_count,
    transfer_table,
    x_power,
    trf_coefficients,
    trf_coefficients_infinite,
    trf_coefficients_polynomial,
    trf_infinite_eval,
    trf_polynomial_eval,
    trf_polynomial_sum,
)

__all__ = [
    'LadderReport',
    'TerminationLadder',
    'TrfTruncation',
    'ladder_consistency',
    'ladder_omegas',
    'TrfValue',
    'a_factor',
    'b_factor',
    'infinite_normalization',
    'nested_tuple_count',
    'qw_rw_eval',
    'second_kind_power',
    'table_cell_count',
    'transfer_table',
    'x_power',
    'trf_coefficients',
    'trf_coefficients_infinite',
    'trf_coefficients_polynomial',
    'trf_infinite_eval',
    'trf_polynomial_eval',
    'trf_polynomial_sum',
]
