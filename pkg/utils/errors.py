"""
异常层次

DomainError 对应参数/定义域问题（CLI 退出码 2），
ConvergenceError 对应数值不收敛（CLI 退出码 3）。
"""


class GchError(Exception):
    """gchkit 所有异常的基类，module 记录出错的模块名"""

    module = "gchkit"

    def __init__(self, message: str, module: str = None):
        super().__init__(message)
        if module:
            self.module = module

    def __str__(self):
        return f"[{self.module}] {super().__str__()}"


# ==================== 定义域错误 ====================

class DomainError(GchError, ValueError):
    """参数不在定义域内"""


class ResonanceError(DomainError):
    """Frobenius 递推分母为零（共振），index 为出错的 m"""

    module = "gch-core"

    def __init__(self, message: str, index: int = None):
        super().__init__(message)
        self.index = index


class DegenerateRootError(DomainError):
    """ν=1 时两个指标根重合，第二类解不存在"""

    module = "gch-core"


class PoleError(DomainError):
    """3TRF 有理因子或 Pochhammer 分母为零"""

    module = "series-3trf"


class TrfSizeError(DomainError):
    """嵌套求和规模超过上限"""

    module = "series-3trf"


class LadderError(DomainError):
    """终止阶梯 β_i 非法"""

    module = "series-3trf"


class ContourBranchError(DomainError):
    """非整数幂在原点围道上产生支点"""

    module = "integral-rep"


class DimensionError(DomainError):
    """n_cap 超出支持范围"""

    module = "integral-rep"


class LatticeBudgetError(DomainError):
    """β 格点数超过预算"""

    module = "genfunc"


# ==================== 数值不收敛 ====================

class ConvergenceError(GchError, ArithmeticError):
    """数值过程未收敛"""


class KummerConvergenceError(ConvergenceError):
    """Kummer 级数在最大项数内未收敛"""

    module = "scalar-kernels"


class QuadratureError(ConvergenceError):
    """求积节点上出现非有限值"""

    module = "integral-rep"


class NormalizationTailError(ConvergenceError):
    """波函数在积分上限处尚未衰减"""

    module = "physics-apps"
