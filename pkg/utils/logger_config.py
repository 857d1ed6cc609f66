"""
gchkit 日志配置

控制台写 stderr（stdout 只放数据表），--log-file 时另写 logs/ 下的轮转文件。
库模块只调用 get_logger，处理器由命令行入口或 conftest 安装一次。
"""

import json
import logging
import os
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler, TimedRotatingFileHandler
from typing import List


class LoggerConfig:
    """进程级日志配置；init_logger 只生效一次"""

    LOG_DIR = "logs"
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
    DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
    LOG_LEVEL = logging.INFO
    FILE_PREFIX = "gchkit"

    DAILY_BACKUPS = 30
    ALL_MAX_BYTES = 10 * 1024 * 1024
    ALL_BACKUPS = 5
    ERROR_MAX_BYTES = 5 * 1024 * 1024
    ERROR_BACKUPS = 3

    _initialized = False

    @classmethod
    def _file_handlers(cls) -> List[logging.Handler]:
        """每日文件、按大小轮转的总文件、只收 ERROR 的 error.log"""
        today = datetime.now().strftime('%Y-%m-%d')
        daily = TimedRotatingFileHandler(
            os.path.join(cls.LOG_DIR, f'{cls.FILE_PREFIX}_{today}.log'),
            when='midnight', interval=1, backupCount=cls.DAILY_BACKUPS, encoding='utf-8',
        )
        daily.suffix = "%Y-%m-%d"
        everything = RotatingFileHandler(
            os.path.join(cls.LOG_DIR, f'{cls.FILE_PREFIX}_all.log'),
            maxBytes=cls.ALL_MAX_BYTES, backupCount=cls.ALL_BACKUPS, encoding='utf-8',
        )
        errors = RotatingFileHandler(
            os.path.join(cls.LOG_DIR, 'error.log'),
            maxBytes=cls.ERROR_MAX_BYTES, backupCount=cls.ERROR_BACKUPS, encoding='utf-8',
        )
        errors.setLevel(logging.ERROR)
        return [daily, everything, errors]

    @classmethod
    def init_logger(cls,
                    log_dir: str = None,
                    log_level: int = None,
                    console_output: bool = True,
                    file_output: bool = True):
        """
        安装根记录器的处理器

        Args:
            log_dir: 日志目录，默认 'logs'
            log_level: 日志级别，默认 INFO
            console_output: 是否写 stderr
            file_output: 是否写轮转文件
        """
        if cls._initialized:
            logging.getLogger(__name__).debug("日志系统已初始化，忽略重复调用")
            return

        if log_dir:
            cls.LOG_DIR = log_dir
        if log_level:
            cls.LOG_LEVEL = log_level

        handlers: List[logging.Handler] = []
        if console_output:
            handlers.append(logging.StreamHandler(sys.stderr))
        if file_output:
            os.makedirs(cls.LOG_DIR, exist_ok=True)
            handlers.extend(cls._file_handlers())

        formatter = logging.Formatter(cls.LOG_FORMAT, cls.DATE_FORMAT)
        root_logger = logging.getLogger()
        root_logger.setLevel(cls.LOG_LEVEL)
        root_logger.handlers.clear()
        for handler in handlers:
            if handler.level == logging.NOTSET:
                handler.setLevel(cls.LOG_LEVEL)
            handler.setFormatter(formatter)
            root_logger.addHandler(handler)

        cls._initialized = True
        logging.getLogger(__name__).debug(
            f"日志系统初始化: 目录={os.path.abspath(cls.LOG_DIR)}, "
            f"级别={logging.getLevelName(cls.LOG_LEVEL)}, stderr={console_output}, 文件={file_output}"
        )

    @classmethod
    def get_logger(cls, name: str = None) -> logging.Logger:
        """未初始化时记录交给 logging 的默认行为"""
        return logging.getLogger(name)

    @classmethod
    def set_level(cls, level: int):
        """修改根记录器及非 ERROR 处理器的级别"""
        root_logger = logging.getLogger()
        root_logger.setLevel(level)
        for handler in root_logger.handlers:
            if handler.level < logging.ERROR:
                handler.setLevel(level)
        cls.LOG_LEVEL = level
        logging.getLogger(__name__).debug(f"日志级别改为 {logging.getLevelName(level)}")


def get_logger(name: str = None) -> logging.Logger:
    return LoggerConfig.get_logger(name)


# ==================== 结构化日志 ====================

class StructuredLogger:
    """消息后追加 ' | {json}' 形式的关键字段"""

    def __init__(self, name: str):
        self.logger = logging.getLogger(name)

    @staticmethod
    def _extra(kwargs) -> str:
        return f" | {json.dumps(kwargs, ensure_ascii=False, default=str)}" if kwargs else ""

    def info(self, msg: str, **kwargs):
        self.logger.info(f"{msg}{self._extra(kwargs)}")

    def warning(self, msg: str, **kwargs):
        self.logger.warning(f"{msg}{self._extra(kwargs)}")

    def error(self, msg: str, **kwargs):
        self.logger.error(f"{msg}{self._extra(kwargs)}")

    def debug(self, msg: str, **kwargs):
        if self.logger.isEnabledFor(logging.DEBUG):
            self.logger.debug(f"{msg}{self._extra(kwargs)}")

    def performance(self, func_name: str, duration: float, **kwargs):
        self.info(f"性能统计: {func_name} 耗时 {duration:.3f}秒", **kwargs)
