"""
性质校验模块
把各模块的数值性质组织成可复现的校验套件
"""

from .suites import CheckResult, SUITES, all_passed, check, run_suite

__all__ = [
    'CheckResult',
    'SUITES',
    'all_passed',
    'check',
    'run_suite',
]
