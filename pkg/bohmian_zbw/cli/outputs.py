from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, Union

import aiofiles

from ..errors import DomainError, OutputError
from ..utils.serialize import dumps_csv, dumps_json, persist_hash
from ..utils.zbwlog import logger
from .models import OutputFormat, RunManifest


def encode_records(records: Union[Sequence[Mapping[str, Any]], Mapping[str, Any]], fmt: OutputFormat,
                   columns: Optional[Sequence[str]] = None) -> bytes:
    if fmt == "json":
        return dumps_json(records)
    if isinstance(records, Mapping):
        raise DomainError("CSV output needs a list of records")
    if columns is None:
        columns = list(records[0]) if records else []
    return dumps_csv(records, columns)


async def write_bytes(payload: bytes, path: Union[str, Path]) -> str:
    """写入字节并返回 xxh64 校验和"""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        async with aiofiles.open(path, "wb") as f:
            await f.write(payload)
    except OSError as e:
        raise OutputError(path, e.strerror or str(e)) from e
    digest = persist_hash(payload)
    logger.debug(f"wrote {path} ({len(payload)} bytes, xxh64 {digest})")
    return digest


async def write_outputs(records: Union[Sequence[Mapping[str, Any]], Mapping[str, Any]], fmt: OutputFormat,
                        path: Union[str, Path], columns: Optional[Sequence[str]] = None) -> str:
    """
    按格式写出记录。

    CSV: 表头一行, 浮点数 repr, '\\n' 换行, 空记录只写表头;
    JSON: 两格缩进, 键排序。相同输入总是得到相同字节。
    """
    return await write_bytes(encode_records(records, fmt, columns), path)


async def write_manifest(manifest: RunManifest, path: Union[str, Path]) -> str:
    return await write_bytes(dumps_json(manifest.model_dump(mode="json")), path)
