"""生成函数：合流超几何多项式核与 GCH 多项式生成函数的截断校验"""

from .weights import WeightSeq, geometric_tail
from .generating import (
    LATTICE_BUDGET,
    contour_radius,
    genfunc_chp,
    genfunc_gch_lhs,
    genfunc_gch_rhs,
    genfunc_lhs_orders,
    genfunc_rhs_orders,
    lattice_size,
)

__all__ = [
    'WeightSeq',
    'geometric_tail',
    'LATTICE_BUDGET',
    'contour_radius',
    'genfunc_chp',
    'genfunc_gch_lhs',
    'genfunc_gch_rhs',
    'genfunc_lhs_orders',
    'genfunc_rhs_orders',
    'lattice_size',
]
