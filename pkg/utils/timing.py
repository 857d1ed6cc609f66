"""性能计时装饰器"""

import functools
import time

from .logger_config import StructuredLogger

_perf_logger = StructuredLogger("gchkit.performance")


def timing_decorator(func=None, *, threshold: float = 0.5):
    """记录耗时超过 threshold 秒的调用"""

    def decorate(f):
        @functools.wraps(f)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            result = f(*args, **kwargs)
            duration = time.perf_counter() - start_time
            if duration > threshold:
                _perf_logger.performance(f.__qualname__, duration)
            return result
        return wrapper

    if func is not None:
        return decorate(func)
    return decorate
