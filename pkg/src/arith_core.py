#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""整数与模算术核心模块。

本模块提供精确的任意精度整数运算：模幂、素性测试、p 进赋值、
S-光滑分解，以及 Wieferich 型同余 b^(l-1) ≡ 1 (mod l²) 的单点检验与区间扫描。
所有函数都是纯函数，可以安全地并发调用。

典型用法示例:
    from arith_core import mod_pow, is_prime, wieferich_scan

    mod_pow(2, 1092, 1093 ** 2)      # -> 1
    is_prime(3511)                   # -> True
    [r.prime for r in wieferich_scan(2, 3, 100_000)]  # -> [1093, 3511]
"""

import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Union

import numpy as np
from tqdm import tqdm

from config import (
    DETERMINISTIC_LIMIT, EXTRA_RANDOM_ROUNDS, MILLER_RABIN_WITNESSES,
    SCAN_CHUNK_SIZE, SCAN_WORKERS, SHOW_PROGRESS, TRIAL_DIVISION_PRIMES
)
from errors import DomainError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


@total_ordering
class _PlusInfinity:
    """赋值 v(0) = +∞ 的哨兵对象，大于任何整数。"""

    _instance: Optional["_PlusInfinity"] = None

    def __new__(cls) -> "_PlusInfinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __hash__(self) -> int:
        return hash("+inf")

    def __add__(self, other: object) -> "_PlusInfinity":
        return self

    __radd__ = __add__

    def __repr__(self) -> str:
        return "+inf"


INFINITY = _PlusInfinity()


@dataclass(frozen=True)
class WieferichReport:
    """一次 Wieferich 检验的结果。

    Attributes:
        base (int): 底数 b ≥ 2
        prime (int): 奇素数 l
        residue (int): b^(l-1) mod l² 的值，位于 [0, l²)
        is_wieferich_pair (bool): residue == 1 时为 True
    """

    base: int
    prime: int
    residue: int
    is_wieferich_pair: bool


# =============================================================================
# 模幂与素性
# =============================================================================

def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """计算 base^exponent mod modulus。

    使用内置三参数 pow（平方-乘法，O(log exponent) 次乘法）。

    Args:
        base (int): 底数（非负）
        exponent (int): 指数（非负）
        modulus (int): 模数，至少为 2

    Returns:
        int: 位于 [0, modulus) 的结果

    Raises:
        DomainError: modulus < 2 或 exponent < 0
    """
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise DomainError(f"exponent must be non-negative, got {exponent}")
    return pow(base, exponent, modulus)


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """判断 n 是否为素数。

    先用小素数试除，再做 Miller-Rabin。见证集取前 13 个素数
    （config.MILLER_RABIN_WITNESSES），对 n < 3.3·10^24 的结果是确定的，
    因此覆盖全部 64 位整数。更大的 n 追加 EXTRA_RANDOM_ROUNDS 轮以 n 为种子的
    随机见证，合数被误判的概率不超过 4^-EXTRA_RANDOM_ROUNDS。

    Args:
        n (int): 待测整数

    Returns:
        bool: n 为素数时返回 True
    """
    if n < 2:
        return False
    for p in TRIAL_DIVISION_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MILLER_RABIN_WITNESSES:
        if a % n == 0:
            continue
        if not _strong_probable_prime(n, a, d, s):
            return False
    if n < DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    for _ in range(EXTRA_RANDOM_ROUNDS):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1), d, s):
            return False
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """用分段筛法返回闭区间 [lo, hi] 中的全部素数（升序）。"""
    lo = max(lo, 2)
    if hi < lo:
        return []
    root = math.isqrt(hi)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for i in range(2, math.isqrt(root) + 1):
        if base[i]:
            base[i * i::i] = False
    segment = np.ones(hi - lo + 1, dtype=bool)
    for p in np.nonzero(base)[0]:
        p = int(p)
        start = max(p * p, ((lo + p - 1) // p) * p)
        segment[start - lo::p] = False
    return [lo + int(i) for i in np.nonzero(segment)[0]]


# =============================================================================
# 赋值与光滑分解
# =============================================================================

def valuation(x: Rational, p: int):
    """有理数 x 的 p 进赋值 v_p(x)；x = 0 时返回 INFINITY。"""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def smooth_factor(n: int, primes: Iterable[int]) -> tuple[dict[int, int], int]:
    """把非零整数 |n| 中属于 primes 的素因子全部提取出来。

    Returns:
        tuple: (指数字典 {p: e}, 剩余的正余因子)
    """
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor zero")
    exponents: dict[int, int] = {}
    for p in primes:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        exponents[p] = e
    return exponents, n


def is_smooth_rational(x: Rational, primes: Iterable[int]) -> bool:
    """x 是否为 ±Π p^e（p ∈ primes，e ∈ Z）形式的非零有理数。"""
    x = Fraction(x)
    if x == 0:
        return False
    primes = tuple(primes)
    return (smooth_factor(x.numerator, primes)[1] == 1
            and smooth_factor(x.denominator, primes)[1] == 1)


# =============================================================================
# Wieferich 检验与扫描
# =============================================================================

def wieferich_test(base: int, l: int) -> WieferichReport:
    """检验 (base, l) 是否为 Wieferich 对，即 base^(l-1) ≡ 1 (mod l²)。

    Args:
        base (int): 底数，至少为 2
        l (int): 奇素数，且不整除 base

    Returns:
        WieferichReport: 检验报告

    Raises:
        DomainError: l 不是奇素数，或 l 整除 base
    """
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if l == 2 or not is_prime(l):
        raise DomainError(f"{l} is not an odd prime")
    if base % l == 0:
        raise DomainError(f"{l} divides the base {base}")
    residue = mod_pow(base, l - 1, l * l)
    return WieferichReport(base=base, prime=l, residue=residue, is_wieferich_pair=residue == 1)


def _scan_chunk(args: tuple[int, int, int]) -> list[WieferichReport]:
    base, lo, hi = args
    found = []
    for l in primes_in_range(lo, hi):
        if l == 2 or base % l == 0:
            continue
        residue = pow(base, l - 1, l * l)
        if residue == 1:
            found.append(WieferichReport(base, l, residue, True))
    return found


def partition_range(lo: int, hi: int, chunk: int) -> list[tuple[int, int]]:
    """把 [lo, hi] 切成长度不超过 chunk 的互不相交的子区间（有序）。"""
    if chunk < 1:
        raise DomainError(f"chunk size must be positive, got {chunk}")
    return [(a, min(a + chunk - 1, hi)) for a in range(lo, hi + 1, chunk)]


def wieferich_scan(base: int, l_min: int, l_max: int,
                   workers: int = SCAN_WORKERS,
                   chunk_size: int = SCAN_CHUNK_SIZE) -> list[WieferichReport]:
    """扫描区间 [l_min, l_max] 内的全部 Wieferich 素数（以 base 为底）。

    区间被切分为互不相交的子区间，按原顺序合并，因此结果与切分方式和
    工作进程数无关。空区间返回空列表。

    Args:
        base (int): 底数，至少为 2
        l_min (int): 区间下界
        l_max (int): 区间上界
        workers (int): 工作进程数，1 表示在当前进程顺序执行
        chunk_size (int): 子区间长度

    Returns:
        list[WieferichReport]: 只包含 Wieferich 对，按 l 升序
    """
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if l_max < l_min:
        return []
    tasks = [(base, a, b) for a, b in partition_range(max(l_min, 2), l_max, chunk_size)]
    logger.debug("wieferich scan base=%d over [%d, %d] in %d chunks", base, l_min, l_max, len(tasks))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(tqdm(pool.map(_scan_chunk, tasks), total=len(tasks),
                               disable=not SHOW_PROGRESS, desc="wieferich"))
    else:
        chunks = [_scan_chunk(t) for t in tqdm(tasks, disable=not SHOW_PROGRESS, desc="wieferich")]
    return [report for chunk in chunks for report in chunk]
