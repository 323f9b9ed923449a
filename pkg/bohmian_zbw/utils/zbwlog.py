import os
import sys
import time
from contextlib import contextmanager
from typing import Iterator, Optional

from loguru import logger

LOG_ENV = "ZBW_LOG"

COLOR_SCHEME = {
    "DEBUG": "<fg #8e8e93>",
    "INFO": "<fg #5ac8fa>",
    "SUCCESS": "<fg #4cd964>",
    "WARNING": "<fg #ffcc00>",
    "ERROR": "<fg #ff3b30>",
    "CRITICAL": "<fg #ff2d55>",
    "CONTEXT": "#af52de",
}

_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


def env_level(default: str = "INFO") -> str:
    """读取 ZBW_LOG, 无法识别的取值回退到 default"""
    raw = (os.getenv(LOG_ENV) or default).strip().upper()
    return raw if raw in _LEVELS else default


def setup_logger(context: str = "zbw", level: Optional[str] = None):
    """
    重新配置 loguru: 单一 stderr 输出, 带上下文标签与时间。

    :param context: 行首的上下文标签
    :param level: 日志等级, 为 None 时读取环境变量 ZBW_LOG
    """
    logger.remove()

    log_format = (
        f"<fg {COLOR_SCHEME['CONTEXT']}>{context}</> | "
        "<green>{time:MM-DD HH:mm:ss}</green> "
        "[<level>{level}</level>] "
        "{message}"
    )

    logger.add(
        sys.stderr,
        format=log_format,
        level=(level or env_level()).upper(),
        colorize=sys.stderr.isatty(),
    )

    for log_level, color in COLOR_SCHEME.items():
        if log_level in _LEVELS:
            logger.level(log_level, color=color)

    return logger


@contextmanager
def stage(name: str) -> Iterator[dict]:
    """记录一个计算阶段的耗时, 结果写入 yield 出去的字典的 seconds 键"""
    record = {"stage": name, "seconds": 0.0}
    start = time.perf_counter()
    logger.debug(f"{name} ...")
    try:
        yield record
    finally:
        record["seconds"] = time.perf_counter() - start
        logger.debug(f"{name} done in {record['seconds']:.3f}s")


logger = setup_logger()
