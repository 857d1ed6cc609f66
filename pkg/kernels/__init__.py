"""标量特殊函数与 Gauss 求积规则"""

from .scalar import (
    KummerResult,
    beta_integral,
    beta_verify,
    chp_eval,
    erf,
    is_nonpositive_integer,
    kummer_m,
    kummer_m_detailed,
    lgamma,
    pochhammer,
)
from .quadrature import gauss_jacobi_interval, gauss_legendre_interval

__all__ = [
    'KummerResult',
    'beta_integral',
    'beta_verify',
    'chp_eval',
    'erf',
    'is_nonpositive_integer',
    'kummer_m',
    'kummer_m_detailed',
    'lgamma',
    'pochhammer',
    'gauss_jacobi_interval',
    'gauss_legendre_interval',
]
