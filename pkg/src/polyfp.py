#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""有限域 F_p 上的一元多项式模块。

本模块用规范的 PolyFp 类型包装 sympy.polys.galoistools：
F_p[x] 中的精确算术（加、减、乘、带余除法、最大公因式）
以及完整分解：无平方分解 → 不同次数分解 → 等次数分解（Cantor-Zassenhaus）。
它是素数分裂分析（numberfield.split_prime）的计算引擎。

PolyFp 的系数低次在前；galoistools 的稠密表示高次在前，转换只发生在本模块内部。

典型用法示例:
    f = PolyFp.from_ints(7, [1, 5, 6, 1])     # x³+6x²+5x+1
    fac = factor_fp(f)
    fac.factors                               # -> ((x+2, 3),)
"""

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence, Union

from sympy.core import random as sympy_random
from sympy.polys import galoistools as gf
from sympy.polys.domains import ZZ

from config import DEFAULT_SEED
from errors import DomainError, FieldMismatchError

PolyOp = Literal["add", "sub", "mul", "divmod", "gcd"]


def _dense(coeffs: Sequence[int]) -> list:
    """低次在前的系数 → galoistools 的高次在前稠密列表。"""
    return [ZZ(c) for c in reversed(coeffs)]


def _coeffs(dense: Sequence) -> tuple[int, ...]:
    return tuple(int(c) for c in reversed(dense))


@contextmanager
def _seeded(seed: int) -> Iterator[None]:
    # gf_edf_zassenhaus 从 sympy 的全局随机源取随机多项式
    state = sympy_random.rng.getstate()
    sympy_random.rng.seed(seed)
    try:
        yield
    finally:
        sympy_random.rng.setstate(state)


# =============================================================================
# 多项式类型
# =============================================================================

@dataclass(frozen=True)
class PolyFp:
    """F_p[x] 中的多项式。

    Attributes:
        p (int): 素数模
        coeffs (tuple[int, ...]): 系数，低次在前，全部约化到 [0, p)，无末尾零
    """

    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_ints(cls, p: int, coeffs: Sequence[int]) -> "PolyFp":
        """由任意整数系数构造，自动约化并去掉末尾零。"""
        if p < 2:
            raise DomainError(f"modulus must be a prime >= 2, got {p}")
        return cls(p, _coeffs(gf.gf_from_int_poly([int(c) for c in reversed(coeffs)], p)))

    @property
    def degree(self) -> int:
        """次数；零多项式返回 -1。"""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _dense(self) -> list:
        return _dense(self.coeffs)

    def _wrap(self, dense: Sequence) -> "PolyFp":
        return PolyFp(self.p, _coeffs(dense))

    def monic(self) -> "PolyFp":
        return self._wrap(gf.gf_monic(self._dense(), self.p, ZZ)[1])

    def _check(self, other: "PolyFp") -> None:
        if self.p != other.p:
            raise FieldMismatchError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "PolyFp") -> "PolyFp":
        self._check(other)
        return self._wrap(gf.gf_add(self._dense(), other._dense(), self.p, ZZ))

    def __sub__(self, other: "PolyFp") -> "PolyFp":
        self._check(other)
        return self._wrap(gf.gf_sub(self._dense(), other._dense(), self.p, ZZ))

    def __mul__(self, other: "PolyFp") -> "PolyFp":
        self._check(other)
        return self._wrap(gf.gf_mul(self._dense(), other._dense(), self.p, ZZ))

    def __pow__(self, e: int) -> "PolyFp":
        return self._wrap(gf.gf_pow(self._dense(), e, self.p, ZZ))

    def divmod(self, other: "PolyFp") -> tuple["PolyFp", "PolyFp"]:
        self._check(other)
        if other.is_zero:
            raise DomainError("division by the zero polynomial")
        q, r = gf.gf_div(self._dense(), other._dense(), self.p, ZZ)
        return self._wrap(q), self._wrap(r)

    def gcd(self, other: "PolyFp") -> "PolyFp":
        """首一最大公因式（两者皆零时返回零多项式）。"""
        self._check(other)
        return self._wrap(gf.gf_gcd(self._dense(), other._dense(), self.p, ZZ))

    def sort_key(self) -> tuple:
        """规范顺序：先按次数，再按系数（低次在前）字典序。"""
        return (self.degree, self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms)


@dataclass(frozen=True)
class FactorizationFp:
    """F_p[x] 中的完整分解：unit · Π factor^multiplicity。

    Attributes:
        factors (tuple): (首一不可约因子, 重数) 的元组，按规范顺序排列
        unit (int): F_p 中的首项系数
    """

    p: int
    factors: tuple[tuple[PolyFp, int], ...]
    unit: int

    def expand(self) -> PolyFp:
        """把分解重新乘出来。"""
        result = PolyFp(self.p, (self.unit % self.p,))
        for g, e in self.factors:
            result = result * (g ** e)
        return result

    def pattern(self) -> list[tuple[int, int]]:
        """(因子次数, 重数) 列表。"""
        return [(g.degree, e) for g, e in self.factors]


# =============================================================================
# 公开运算
# =============================================================================

def poly_arith(a: PolyFp, b: PolyFp, op: PolyOp) -> Union[PolyFp, tuple[PolyFp, PolyFp]]:
    """对两个 F_p 多项式做 add / sub / mul / divmod / gcd。

    Raises:
        FieldMismatchError: 模数不同
        DomainError: divmod 的除式为零，或 op 未知
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return a.divmod(b)
    if op == "gcd":
        return a.gcd(b)
    raise DomainError(f"unknown polynomial operation {op!r}")


def factor_fp(f: PolyFp, seed: int = DEFAULT_SEED) -> FactorizationFp:
    """把 f 在 F_p 上完全分解。

    依次调用 gf_sqf_list、gf_ddf_zassenhaus、gf_edf_zassenhaus。
    等次数分解期间 sympy 的随机源以 seed 初始化，结束后恢复原状态；
    结果总是按规范顺序（次数，然后系数字典序）排列，与随机过程无关。

    Args:
        f (PolyFp): 非零多项式
        seed (int): 等次数分解的随机种子

    Returns:
        FactorizationFp: 完整分解

    Raises:
        DomainError: f 为零多项式
    """
    if f.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    p = f.p
    unit = f.coeffs[-1]
    if f.degree == 0:
        return FactorizationFp(p, (), unit)
    _, parts = gf.gf_sqf_list(f._dense(), p, ZZ)
    collected: dict[tuple[int, ...], int] = {}
    with _seeded(seed):
        for part, mult in parts:
            for block, d in gf.gf_ddf_zassenhaus(part, p, ZZ):
                for g in gf.gf_edf_zassenhaus(block, d, p, ZZ):
                    key = _coeffs(gf.gf_monic(g, p, ZZ)[1])
                    collected[key] = collected.get(key, 0) + mult
    factors = sorted(((PolyFp(p, k), e) for k, e in collected.items()), key=lambda t: t[0].sort_key())
    return FactorizationFp(p, tuple(factors), unit)


def is_irreducible_fp(f: PolyFp) -> bool:
    """f 在 F_p 上是否不可约（次数 ≥ 1，Rabin 检验）。"""
    if f.degree < 1:
        return False
    return bool(gf.gf_irreducible_p(f._dense(), f.p, ZZ))
