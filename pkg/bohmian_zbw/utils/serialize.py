import csv
import io
import math
from typing import Any, Dict, Iterable, List, Mapping, Sequence

import numpy as np
import orjson
import xxhash

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def default(v: Any) -> Any:
    """orjson 无法直接处理的类型"""
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    if isinstance(v, np.generic):
        return v.item()
    if hasattr(v, "model_dump"):
        return v.model_dump(mode="json")
    raise TypeError(f"Type is not JSON serializable: {type(v).__name__}")


def dumps_json(data: Any) -> bytes:
    """缩进两格、键排序的 JSON, 以换行结尾"""
    return orjson.dumps(data, default=default, option=JSON_OPTIONS) + b"\n"


def loads_json(raw: bytes | str) -> Any:
    return orjson.loads(raw)


def _cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        return repr(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def dumps_csv(records: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> bytes:
    """
    以给定列顺序输出 CSV。

    浮点数使用 repr, 小数点为 '.', 可无损读回; 空记录只输出表头。
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_cell(record[column]) for column in columns])
    return buffer.getvalue().encode("utf-8")


def columns_to_records(columns: Mapping[str, np.ndarray]) -> List[Dict[str, float]]:
    """把等长列数组转成逐行记录"""
    names = list(columns)
    if not names:
        return []
    length = len(columns[names[0]])
    for name in names:
        if len(columns[name]) != length:
            raise ValueError(f"column {name} has length {len(columns[name])}, expected {length}")
    return [{name: float(columns[name][i]) for name in names} for i in range(length)]


def persist_hash(payload: bytes) -> str:
    """
    持久化哈希, 用于产物校验。
    保证相同字节在不同环境、不同时间下得到相同结果。
    """
    return xxhash.xxh64(payload).hexdigest()
