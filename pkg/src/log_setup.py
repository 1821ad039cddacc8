#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""日志初始化模块。"""

import logging
import sys

from config import LOG_FORMAT, LOG_LEVEL

_configured: bool = False


def configure_logging(verbose: bool = False) -> None:
    """配置根日志记录器，日志一律写到 stderr。

    重复调用只会调整级别，不会重复添加 handler。

    Args:
        verbose (bool): 为 True 时使用 DEBUG 级别
    """
    global _configured
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.WARNING)
    root = logging.getLogger()
    if not _configured:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        _configured = True
    root.setLevel(level)
