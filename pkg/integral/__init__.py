"""积分表示：围道/Jacobi 求积、K_j/Q_j 恒等式与嵌套积分引擎"""

from .contour import (
    QuadratureSpec,
    TransferState,
    check_origin_exponent,
    chp_contour,
    contour_nodes,
    contour_trapezoid,
    kummer_contour,
    nodes_for,
    require_finite,
    v_power,
)
from .identities import verify_kj, verify_qj
from .nested import (
    MAX_TRANSFER_ORDER,
    LevelNodes,
    build_rep_levels,
    integral_rep_eval,
    kernel_coefficients,
    nested_eval,
    series_jets,
    tensor_level,
)

__all__ = [
    # 求积
    'QuadratureSpec',
    'TransferState',
    'check_origin_exponent',
    'chp_contour',
    'contour_nodes',
    'contour_trapezoid',
    'kummer_contour',
    'nodes_for',
    'require_finite',
    'v_power',

    # 恒等式
    'verify_kj',
    'verify_qj',

    # 嵌套积分
    'MAX_TRANSFER_ORDER',
    'LevelNodes',
    'build_rep_levels',
    'integral_rep_eval',
    'kernel_coefficients',
    'nested_eval',
    'series_jets',
    'tensor_level',
]
