# utils/logger.py
"""
日志工具：按 LOGGING_CONFIG 统一配置标准 logging
"""

import logging

from utils.config import LOGGING_CONFIG

_configured = False


def _configure_root():
    """只配置一次根日志器"""
    global _configured
    if _configured:
        return
    root = logging.getLogger("oscint")
    root.setLevel(LOGGING_CONFIG["LOG_LEVEL"].upper())
    formatter = logging.Formatter(LOGGING_CONFIG["LOG_FORMAT"])

    stream = logging.StreamHandler()
    stream.setFormatter(formatter)
    root.addHandler(stream)

    if LOGGING_CONFIG["LOG_FILE"]:
        file_handler = logging.FileHandler(LOGGING_CONFIG["LOG_FILE"], encoding="utf-8")
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    root.propagate = False
    _configured = True


def get_logger(name):
    """
    获取模块日志器

    Args:
        name: 模块名（通常传 __name__）

    Returns:
        logging.Logger
    """
    _configure_root()
    return logging.getLogger(f"oscint.{name}")
