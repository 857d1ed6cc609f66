"""
数据表输出

CSV：表头 + 数据行，浮点 17 位有效数字，'\n' 行尾
JSON：{"rows": [...], "meta": {...}}，键名与 CSV 列名一致，非有限浮点写为 null
"""

import json
import math
import sys
from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd

from utils.errors import DomainError
from utils.logger_config import get_logger

logger = get_logger(__name__)

FORMATS = ("csv", "json")
FLOAT_FORMAT = "%.17g"


def make_table(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> pd.DataFrame:
    """按给定列序构造表；空行集得到只有表头的表"""
    if not rows:
        return pd.DataFrame(columns=list(columns))
    return pd.DataFrame(list(rows), columns=list(columns))


def _plain(value: Any) -> Any:
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def render_table(table: pd.DataFrame, fmt: str, meta: Dict[str, Any]) -> str:
    if fmt == "csv":
        return table.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    if fmt == "json":
        rows = [{k: _plain(v) for k, v in record.items()} for record in table.to_dict(orient="records")]
        return json.dumps({"rows": rows, "meta": meta}, ensure_ascii=False, indent=2) + "\n"
    raise DomainError(f"未知的输出格式: {fmt}", module="cli")


def write_table(table: pd.DataFrame, fmt: str, meta: Dict[str, Any], path: Optional[str] = None):
    """写到 path；path 为空时写到 stdout"""
    text = render_table(table, fmt, meta)
    if path:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info(f"结果已写入 {path} ({len(table)} 行)")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
