"""
有限支撑权重序列 s_0, s_1, …, s_K

s_{a,b} = s_a s_{a+1} ⋯ s_b；K 之后的 s_i 在尾积中按 1 处理，
因此 s_{a,∞} = s_{a,K}，且 k > K 时 1/(1 − s_{k,∞}) 不出现。
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from utils.errors import DomainError


@dataclass(frozen=True)
class WeightSeq:
    """生成函数算子中的形式变量"""
    s: Tuple[float, ...]

    def __post_init__(self):
        values = [float(v) for v in self.s]
        if not values:
            raise DomainError("权重序列至少包含 s_0", module="genfunc")
        while len(values) > 1 and values[-1] == 0.0:
            values.pop()
        object.__setattr__(self, "s", tuple(values))
        for a in range(len(values)):
            if abs(self.tail(a)) >= 1.0:
                raise DomainError(f"|s_{{{a},K}}| 必须 < 1，收到 {self.tail(a)}", module="genfunc")

    @property
    def K(self) -> int:
        return len(self.s) - 1

    def __getitem__(self, i: int) -> float:
        return self.s[i] if i <= self.K else 0.0

    def partial_product(self, a: int, b: int) -> float:
        """s_{a,b}，空积为 1"""
        if a < 0:
            raise DomainError(f"下标必须非负，收到 a={a}", module="genfunc")
        return float(np.prod([self[i] for i in range(a, b + 1)])) if b >= a else 1.0

    def tail(self, a: int) -> float:
        """s_{a,∞} = s_{a,K}"""
        return self.partial_product(a, self.K)

    def tail_product(self, m: int) -> float:
        """Π_{k=m+1}^{K} 1/(1 − s_{k,K})"""
        result = 1.0
        for k in range(m + 1, self.K + 1):
            result /= 1.0 - self.tail(k)
        return result


def geometric_tail(s: float, start: int) -> float:
    """Σ_{β ≥ start} s^β = s^start/(1 − s)，|s| < 1"""
    if abs(s) >= 1.0:
        raise DomainError(f"几何级数要求 |s| < 1，收到 s={s}", module="genfunc")
    if start < 0:
        raise DomainError(f"起始指标必须非负，收到 {start}", module="genfunc")
    return s ** start / (1.0 - s)
