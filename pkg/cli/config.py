"""
运行配置

RunConfig 记录一次 CLI 调用的全部输入，原样写入 JSON 的 meta。
配置文件中的键合并在命令行参数之下：命令行已给出的键不再取配置文件的值。
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from utils.config import load_config_file
from utils.logger_config import get_logger

logger = get_logger(__name__)

COMMANDS = ("eval", "verify", "spectrum")
FLAG_KEYS = ("verbose", "log-file")
TRUE_VALUES = ("1", "true", "yes", "on")


@dataclass
class RunConfig:
    """一次运行的配置"""
    command: str
    params: Dict[str, Any] = field(default_factory=dict)  # 方程或模型参数绑定
    options: Dict[str, Any] = field(default_factory=dict)  # 截断、分支、网格等覆盖项
    fmt: str = "csv"
    output: Optional[str] = None
    seed: int = 0

    def to_meta(self, version: str) -> Dict[str, Any]:
        return {"seed": self.seed, "version": version, "config": asdict(self)}


def _given_on_command_line(key: str, argv: Sequence[str]) -> bool:
    flag = f"--{key}"
    return any(a == flag or a.startswith(flag + "=") for a in argv)


def config_arguments(config: Dict[str, str], argv: Sequence[str]) -> List[str]:
    """把配置文件条目转成命令行参数，跳过命令行已给出的键"""
    extra: List[str] = []
    for key, value in config.items():
        if key == "config" or _given_on_command_line(key, argv):
            continue
        if key in FLAG_KEYS:
            if value.lower() in TRUE_VALUES:
                extra.append(f"--{key}")
            continue
        extra.extend([f"--{key}", value])
    return extra


def merge_config_file(argv: Sequence[str], path: Optional[str]) -> List[str]:
    """在子命令之后插入配置文件给出的参数；未知键交给 argparse 报用法错误"""
    argv = list(argv)
    config = load_config_file(path)
    if not config:
        return argv
    index = next((i for i, a in enumerate(argv) if a in COMMANDS), None)
    if index is None:
        return argv
    extra = config_arguments(config, argv)
    logger.debug(f"配置文件 {path} 补充参数: {extra}")
    return argv[:index + 1] + extra + argv[index + 1:]
