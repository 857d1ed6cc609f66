"""补偿求和：基于 TwoSum 误差无损变换的累加器，支持实数、复数与 numpy 数组"""

import numpy as np


def two_sum(a, b):
    """返回 (s, e) 使得 a + b = s + e 精确成立"""
    s = a + b
    bp = s - a
    ap = s - bp
    return s, (a - ap) + (b - bp)


class KahanAccumulator:
    """
    运行中的补偿和

    与 math.fsum 不同，可以逐项追加，也可以对 numpy 数组逐元素累加
    （嵌套积分引擎中每个节点各自一条级数）。
    """

    __slots__ = ("_s", "_c", "abs_sum")

    def __init__(self, initial=0.0):
        self._s = initial
        self._c = initial * 0.0
        self.abs_sum = np.abs(initial)

    def add(self, term):
        self._s, err = two_sum(self._s, term)
        self._c = self._c + err
        self.abs_sum = self.abs_sum + np.abs(term)
        return self

    def __iadd__(self, term):
        return self.add(term)

    @property
    def value(self):
        return self._s + self._c


def compensated_sum(terms, initial=0.0):
    """对可迭代对象做补偿求和"""
    acc = KahanAccumulator(initial)
    for term in terms:
        acc.add(term)
    return acc.value
