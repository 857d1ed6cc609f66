"""终止阶梯与截断配置"""

from dataclasses import dataclass
from typing import Sequence, Tuple

from core.params import GchParams
from utils.errors import DomainError, LadderError
from utils.logger_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class TerminationLadder:
    """非递减非负整数序列 β_0 ≤ β_1 ≤ …（第二类为 ψ_i）"""
    betas: Tuple[int, ...]
    kind: str = "first"

    def __post_init__(self):
        betas = tuple(self.betas)
        if not betas:
            raise LadderError("终止阶梯不能为空")
        for b in betas:
            if float(b) != int(b) or int(b) < 0:
                raise LadderError(f"阶梯元素必须是非负整数，收到 {b}")
        betas = tuple(int(b) for b in betas)
        for i in range(1, len(betas)):
            if betas[i] < betas[i - 1]:
                raise LadderError(f"阶梯必须非递减: β_{i - 1}={betas[i - 1]} > β_{i}={betas[i]}")
        if self.kind not in ("first", "second"):
            raise LadderError(f"未知的阶梯类别: {self.kind}")
        object.__setattr__(self, "betas", betas)

    @classmethod
    def parse(cls, text: str, kind: str = "first") -> "TerminationLadder":
        """解析 "1,1,2" 形式的字符串"""
        try:
            values = [int(v) for v in text.replace(" ", "").split(",") if v != ""]
        except ValueError as e:
            raise LadderError(f"无法解析阶梯 {text!r}: {e}")
        return cls(tuple(values), kind)

    def __len__(self) -> int:
        return len(self.betas)

    def __getitem__(self, i: int) -> int:
        return self.betas[i]


@dataclass(frozen=True)
class TrfTruncation:
    """3TRF 截断：外层 ε̃ 幂次上限与无穷分支内层求和上限"""
    n_max: int = 8  # 外层截断 N
    inner_max: int = 60  # 每个 i_k 求和的上限

    def __post_init__(self):
        if self.n_max < 0:
            raise DomainError(f"n_max 必须 ≥ 0，收到 {self.n_max}", module="series-3trf")
        if self.inner_max < 1:
            raise DomainError(f"inner_max 必须 ≥ 1，收到 {self.inner_max}", module="series-3trf")


@dataclass(frozen=True)
class LadderReport:
    """由固定 Ω 反解的 β_i = −Ω/(2μ) − (i+λ)/2 及其一致性"""
    values: Tuple[float, ...]
    integral: bool
    nondecreasing: bool

    @property
    def consistent(self) -> bool:
        return self.integral and self.nondecreasing and all(v >= 0 for v in self.values)


def ladder_consistency(p: GchParams, lam: float, count: int) -> LadderReport:
    """检查是否存在与单一 Ω 相容的阶梯"""
    p.require_mu("阶梯反解")
    values = tuple(-p.omega_cap / (2.0 * p.mu) - 0.5 * (i + lam) for i in range(count))
    integral = all(abs(v - round(v)) < 1e-12 for v in values)
    nondecreasing = all(values[i] <= values[i + 1] for i in range(len(values) - 1))
    report = LadderReport(values, integral, nondecreasing)
    if not report.consistent:
        logger.info(f"不存在与 Ω={p.omega_cap} 相容的终止阶梯 (count={count})，阶梯按输入数据处理")
    return report


def ladder_omegas(ladder: Sequence[int], mu: float, lam: float) -> Tuple[float, ...]:
    """每层的 Ω_k = −μ(2β_k + k + λ)"""
    return tuple(-mu * (2.0 * b + k + lam) for k, b in enumerate(ladder))
