#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
日誌系統配置
所有日誌寫到 stderr 或檔案；標準輸出保留給機器可讀結果
"""

import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional

from loguru import logger

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{extra[component]}</cyan> | <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[component]} | {name}:{line} | {message}"

# (檔名, 等級, 過濾)
FILE_SINKS = (
    ("floquet.log", "DEBUG", None),
    ("error.log", "ERROR", None),
    ("performance.log", "DEBUG", lambda record: record["message"].startswith("PERF")),
)

logger.configure(extra={"component": "floquet"})


def setup_logger(log_level: str = "INFO", log_dir: Optional[Path] = None):
    """
    設置日誌系統

    Args:
        log_level: stderr 的日誌等級 (DEBUG, INFO, WARNING, ERROR)
        log_dir: 日誌文件目錄；為 None 時只輸出到 stderr
    """
    logger.remove()
    logger.add(sys.stderr, format=CONSOLE_FORMAT, level=log_level.upper(), colorize=True, diagnose=False)

    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        for name, level, keep in FILE_SINKS:
            logger.add(
                log_dir / name, format=FILE_FORMAT, level=level, filter=keep,
                rotation="10 MB", retention=5, encoding="utf-8",
            )

    logger.debug(f"📝 日誌系統已初始化，等級: {log_level}")


def _fields(details: dict) -> str:
    return " | ".join(f"{k}={v}" for k, v in details.items())


def log_performance(operation: str, duration: float, **metrics: Any):
    """以 PERF 前綴記錄耗時（秒）與計算規模"""
    logger.bind(component="perf").debug(f"PERF | {operation} | {duration:.4f}s | {_fields(metrics)}")


@contextmanager
def timed(operation: str, **metrics: Any) -> Iterator[None]:
    """計時區塊，結束時寫入性能日誌"""
    start = time.perf_counter()
    try:
        yield
    finally:
        log_performance(operation, time.perf_counter() - start, **metrics)


def log_run_status(command: str, status: str, **details: Any):
    """
    子命令狀態行

    Args:
        command: 子命令名稱
        status: START、DONE 或 FAILED
    """
    logger.bind(component="cli").info(f"STATUS | {command} | {status} | {_fields(details)}")


class ContextualLogger:
    """綁定元件名稱的日誌記錄器，訊息前綴 [component]"""

    def __init__(self, component: str):
        self.component = component
        self._logger = logger.bind(component=component)

    def _emit(self, level: str, message: str):
        self._logger.opt(depth=2).log(level, f"[{self.component}] {message}")

    def debug(self, message: str):
        self._emit("DEBUG", message)

    def info(self, message: str):
        self._emit("INFO", message)

    def warning(self, message: str):
        self._emit("WARNING", message)

    def error(self, message: str):
        self._emit("ERROR", message)
