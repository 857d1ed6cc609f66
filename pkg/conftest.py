"""pytest 公共配置：项目根目录加入路径，日志只走内存"""

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from utils.logger_config import LoggerConfig  # noqa: E402

# 测试时不写文件，也不挂控制台处理器
LoggerConfig.init_logger(console_output=False, file_output=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
