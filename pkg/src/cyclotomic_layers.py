#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""分圆 Z_l-扩张的层次构造模块。

第 n 层 Q_{n,l} 是 Q(μ_{l^(n+1)}) 中唯一的 l^n 次子域。本模块用高斯周期
η = Σ_{h∈H} ζ^h（H 为 (Z/l^(n+1))^× 中唯一的 l-1 阶子群）构造它的极小多项式：
在群环 Z[C_N]（N = l^(n+1)）中精确地展开 Π_j (x - η_j)，再约化到 Z[ζ]，
断言所有系数都是有理整数。复合层 K_{n,l} = K·Q_{n,l} 由 θ + cη 的特征多项式
（结式 Res_y(f(y), g_c(x - y))）给出。

典型用法示例:
    layer = build_layer(3, 1)
    layer.minpoly                             # -> (1, -3, 0, 1)，即 x³ - 3x + 1
    F = build_compositum(make_field([1, -2, -1, 1]), build_layer(5, 1))
    F.degree                                  # -> 15
    inert_in_layer(2, 5)                      # -> True
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import sympy
from sympy import Poly, ZZ

from arith_core import is_prime, mod_pow, valuation
from config import LAYER_DEGREE_CAP, PERIOD_NUMERIC_TOLERANCE, PRIMITIVE_SHIFTS
from errors import DomainError, InvariantViolation
from numberfield import NumberField, make_field, poly_to_str, write_field_spec

logger = logging.getLogger(__name__)

_X, _Y = sympy.symbols("x y")


@dataclass(frozen=True)
class LayerSpec:
    """第 n 层 Q_{n,l} 的构造数据。

    Attributes:
        l (int): 奇素数
        n (int): 层的编号
        minpoly (tuple[int, ...]): l^n 次首一整系数极小多项式，常数项在前
        subgroup (tuple[int, ...]): 子群 H（(Z/l^(n+1))^× 中的 l-1 阶子群）
        coset_reps (tuple[int, ...]): 陪集代表元 1 + l·t，t = 0..l^n - 1
        disc (int): 极小多项式的判别式
        caveat_primes (tuple[int, ...]): 整除判别式、不等于 l 且未通过 Dedekind 检验的素数
    """

    l: int
    n: int
    minpoly: tuple[int, ...]
    subgroup: tuple[int, ...]
    coset_reps: tuple[int, ...]
    disc: int
    caveat_primes: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def conductor(self) -> int:
        return self.l ** (self.n + 1)

    @property
    def generator_descr(self) -> str:
        return (f"eta = sum of zeta_{self.conductor}^h over H = {{{', '.join(map(str, self.subgroup))}}}; "
                f"cosets a*H for a = 1 + {self.l}*t, t = 0..{self.degree - 1}")

    def disc_is_power_of_l(self) -> bool:
        d = abs(self.disc)
        return d == self.l ** valuation(d, self.l)


# =============================================================================
# 群环 Z[C_N] 与 Z[ζ_N] 中的精确运算
# =============================================================================

def _mul_by_period(vec: np.ndarray, exponents: Sequence[int]) -> np.ndarray:
    """vec·η，其中 η = Σ ζ^e；乘以 ζ^e 在群环中就是循环移位。"""
    out = np.zeros_like(vec)
    for e in exponents:
        out = out + np.roll(vec, e)
    return out


def _reduce_cyclotomic(vec: np.ndarray, l: int) -> np.ndarray:
    """把群环元素约化到 Z[ζ_N] 的幂基 1, ζ, ..., ζ^(φ(N)-1)。

    Φ_N(x) = Σ_{i<l} x^(i·N/l)，于是 ζ^j (j ≥ φ(N)) 可以改写为更低次项之和。
    """
    vec = vec.copy()
    N = len(vec)
    step = N // l
    phi = N - step
    for j in range(N - 1, phi - 1, -1):
        c = vec[j]
        if c:
            vec[j] = 0
            base = j - phi
            for i in range(l - 1):
                vec[base + i * step] -= c
    return vec[:phi]


def _unit_subgroup(l: int, N: int) -> list[int]:
    return [h for h in range(1, N) if h % l and pow(h, l - 1, N) == 1]


def build_layer(l: int, n: int, degree_cap: int = LAYER_DEGREE_CAP) -> LayerSpec:
    """用高斯周期构造 Q_{n,l} 的极小多项式。

    Args:
        l (int): 奇素数
        n (int): 正整数层号
        degree_cap (int): 次数上限，默认 25

    Returns:
        LayerSpec: 层的构造数据

    Raises:
        DomainError: l 不是奇素数、n < 1，或 l^n 超过上限
        InvariantViolation: 周期乘积的某个系数不是有理整数
    """
    if l < 3 or not is_prime(l):
        raise DomainError(f"{l} is not an odd prime")
    if n < 1:
        raise DomainError(f"layer index must be positive, got {n}")
    degree = l ** n
    if degree > degree_cap:
        raise DomainError(f"layer degree {degree} exceeds the cap {degree_cap}")
    N = l ** (n + 1)
    H = _unit_subgroup(l, N)
    if len(H) != l - 1:
        raise InvariantViolation(f"subgroup of order {l - 1} not found mod {N}", H)
    reps = [1 + l * t for t in range(degree)]

    # 系数向量：coeffs[k] 是 x^k 的系数（群环元素）
    one = np.zeros(N, dtype=object)
    one[0] = 1
    coeffs = [one]
    for a in reps:
        exponents = [(h * a) % N for h in H]
        shifted = [np.zeros(N, dtype=object)] + coeffs
        for k in range(len(coeffs)):
            shifted[k] = shifted[k] - _mul_by_period(coeffs[k], exponents)
        coeffs = shifted

    minpoly = []
    for k, vec in enumerate(coeffs):
        reduced = _reduce_cyclotomic(vec, l)
        if any(reduced[1:]):
            raise InvariantViolation(f"coefficient of x^{k} is not a rational integer", list(reduced))
        minpoly.append(int(reduced[0]))
    if minpoly[-1] != 1:
        raise InvariantViolation("period polynomial is not monic", minpoly)

    disc = int(sympy.discriminant(Poly(list(reversed(minpoly)), _X, domain=ZZ)))
    field = make_field(minpoly)
    cofactor = abs(disc) // l ** valuation(abs(disc), l)
    caveats = tuple(q for q in sorted(sympy.factorint(cofactor)) if not field.power_basis_ok(q))
    if caveats:
        logger.warning("layer (l=%d, n=%d) power basis is not maximal at %s", l, n, caveats)
    logger.debug("built layer l=%d n=%d: %s", l, n, poly_to_str(minpoly))
    return LayerSpec(l, n, tuple(minpoly), tuple(sorted(H)), tuple(reps), disc, caveats)


def layer_field(layer: LayerSpec) -> NumberField:
    """把 LayerSpec 转成 NumberField（不可约性已由构造保证，但仍会复核）。"""
    return make_field(layer.minpoly)


def layer_to_field_spec(layer: LayerSpec) -> str:
    """序列化为域描述文本，附带 l、n、子群等来源信息。"""
    meta = {
        "source": "cyclotomic layer",
        "l": str(layer.l),
        "n": str(layer.n),
        "H": " ".join(map(str, layer.subgroup)),
        "generator": layer.generator_descr,
        "disc": str(layer.disc),
    }
    return write_field_spec(layer.minpoly, meta)


def period_numeric_residual(layer: LayerSpec) -> float:
    """在数值周期处计算极小多项式的相对残差（complex128，仅作健全性检查）。"""
    N = layer.conductor
    eta = sum(np.exp(2j * np.pi * h / N) for h in layer.subgroup)
    coeffs = np.array(list(reversed(layer.minpoly)), dtype=float)
    value = np.polyval(coeffs, eta)
    scale = np.polyval(np.abs(coeffs), abs(eta))
    return float(abs(value) / max(scale, 1.0))


def period_numeric_check(layer: LayerSpec, tolerance: float = PERIOD_NUMERIC_TOLERANCE) -> bool:
    return period_numeric_residual(layer) < tolerance


# =============================================================================
# 复合层
# =============================================================================

def _shifted_layer_poly(g: Sequence[int], c: int) -> list[int]:
    """g_c(z) = c^deg g · g(z/c)，其根为 c·η_j。"""
    d = len(g) - 1
    return [g[k] * c ** (d - k) for k in range(d + 1)]


def build_compositum(K: NumberField, layer: LayerSpec, degree_cap: int = LAYER_DEGREE_CAP) -> NumberField:
    """构造 K_{n,l} = K·Q_{n,l}，本原元为 θ + cη。

    按 config.PRIMITIVE_SHIFTS 的顺序尝试 c，直到特征多项式无平方因子为止。
    由于 gcd([K:Q], l) = 1，次数为 [K:Q]·l^n 的无平方特征多项式即为极小多项式。

    Raises:
        DomainError: l 整除 [K:Q]，或乘积次数超过上限，或全部平移都失败
    """
    m = K.degree
    if math.gcd(m, layer.l) != 1:
        raise DomainError(f"l = {layer.l} divides [K:Q] = {m}")
    target = m * layer.degree
    if target > degree_cap:
        raise DomainError(f"compositum degree {target} exceeds the cap {degree_cap}")
    if m == 1:
        return layer_field(layer)
    f_y = Poly(list(reversed(K.f)), _Y).as_expr()
    for c in PRIMITIVE_SHIFTS:
        g_c = _shifted_layer_poly(layer.minpoly, c)
        g_expr = sum(coef * (_X - _Y) ** k for k, coef in enumerate(g_c))
        res = Poly(sympy.resultant(f_y, g_expr, _Y), _X, domain=ZZ)
        lead = res.LC()
        if res.degree() != target or abs(lead) != 1:
            raise InvariantViolation(f"resultant has degree {res.degree()} and leading coefficient {lead}")
        if lead == -1:
            res = -res
        if res.gcd(res.diff(_X)).degree() == 0:
            coeffs = [int(v) for v in reversed(res.all_coeffs())]
            logger.debug("compositum primitive element theta + %d*eta", c)
            return make_field(coeffs, check_irreducible=False)
        logger.warning("theta + %d*eta is not primitive (characteristic polynomial not squarefree), retrying", c)
    raise DomainError(f"no primitive element found among shifts {PRIMITIVE_SHIFTS}")


def inert_in_layer(d: int, l: int) -> bool:
    """素数 d 在 Q_{n,l} 中惰性当且仅当 d^(l-1) ≢ 1 (mod l²)，与 n 无关。

    Raises:
        DomainError: d = l，或两者之一不是素数，或 l = 2
    """
    if not is_prime(d) or not is_prime(l) or l == 2:
        raise DomainError(f"need a prime d and an odd prime l, got d={d}, l={l}")
    if d == l:
        raise DomainError("d and l must be distinct")
    return mod_pow(d, l - 1, l * l) != 1
