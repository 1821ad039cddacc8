#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""异常类型模块。

工具箱中所有可预期的错误都继承自 ToolkitError，命令行入口据此映射退出码：
输入与前置条件错误返回 2，内部不变量被破坏返回 3。
"""

from typing import Any, Optional


class ToolkitError(Exception):
    """工具箱异常基类。"""

    exit_code: int = 2


class DomainError(ToolkitError, ValueError):
    """参数取值不在运算的定义域内（模数过小、非素数等）。"""


class PreconditionError(ToolkitError):
    """运算要求的分类、整性或指标条件不满足。"""


class FieldMismatchError(ToolkitError):
    """两个元素（或多项式）不属于同一个数域（或同一个 F_p）。"""


class ReducibleError(DomainError):
    """定义多项式在 Q 上可约。

    Attributes:
        witness: 一个非平凡因子的系数列表（常数项在前）
    """

    def __init__(self, message: str, witness: Optional[list[int]] = None) -> None:
        super().__init__(message)
        self.witness: Optional[list[int]] = witness


class WrongTheoremError(ToolkitError):
    """场景数据属于另一条定理的适用范围。"""


class MissingInputError(ToolkitError):
    """场景缺少定理检查所需的字段（例如未声明 h⁺ 的奇偶性）。"""


class InvariantViolation(ToolkitError):
    """内部不变量被破坏，说明实现本身有缺陷。"""

    exit_code = 3

    def __init__(self, message: str, detail: Any = None) -> None:
        super().__init__(message)
        self.detail: Any = detail
