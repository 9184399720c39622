"""
工具模組
"""
from .logger import setup_logger, log_performance, log_run_status, timed, ContextualLogger

__all__ = ["setup_logger", "log_performance", "log_run_status", "timed", "ContextualLogger"]
