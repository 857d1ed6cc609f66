"""
环境变量与配置文件读取

GCHKIT_THREADS 限制内部并行度；配置文件是扁平的 key=value 文本，
用 python-dotenv 解析。
"""

import os
from typing import Dict, Optional

from dotenv import dotenv_values

from .errors import DomainError
from .logger_config import get_logger

logger = get_logger(__name__)

THREADS_ENV = "GCHKIT_THREADS"
LOG_DIR_ENV = "GCHKIT_LOG_DIR"
LOG_LEVEL_ENV = "GCHKIT_LOG_LEVEL"


def thread_cap() -> int:
    """读取 GCHKIT_THREADS，默认 min(8, cpu_count)"""
    raw = os.getenv(THREADS_ENV)
    default = min(8, os.cpu_count() or 1)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"{THREADS_ENV}={raw!r} 不是整数，使用默认值 {default}")
        return default
    if value < 1:
        logger.warning(f"{THREADS_ENV}={value} 小于 1，按 1 处理")
        return 1
    return value


def load_config_file(path: Optional[str]) -> Dict[str, str]:
    """
    读取扁平 key=value 配置文件

    Returns:
        键去掉前导 '-' 的字典；值为空的键被丢弃
    """
    if not path:
        return {}
    if not os.path.exists(path):
        raise DomainError(f"配置文件不存在: {path}", module="cli")
    values = dotenv_values(path)
    config = {}
    for key, value in values.items():
        if value is None or value == "":
            continue
        config[key.strip().lstrip("-")] = value.strip()
    logger.debug(f"读取配置文件 {path}: {len(config)} 项")
    return config
