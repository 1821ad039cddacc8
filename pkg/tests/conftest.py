#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""测试公共配置：把 src/ 加入模块搜索路径，并提供常用数域。"""

import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from numberfield import make_field  # noqa: E402

# x³ - x² - 2x + 1，即 Q(ζ₇)⁺，判别式 49
CUBIC = [1, -2, -1, 1]


@pytest.fixture
def rationals():
    """有理数域 Q = Q[x]/(x)。"""
    return make_field([0, 1])


@pytest.fixture
def cubic():
    """三次域 Q(ζ₇)⁺。"""
    return make_field(CUBIC)
