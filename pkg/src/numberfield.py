#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""数域模块。

本模块用首一不可约整系数多项式 f 表示数域 K = Q[x]/(f)，
提供幂基下的精确元素算术、范数与特征多项式、素数分裂分析（带 Dedekind
指标检验）、惰性素数处的赋值、全分歧素数处的剩余映射，以及域描述文件的读写。

约定:
    - 多项式一律以系数列表表示，常数项在前。
    - Q 本身表示为 Q[x]/(x)，θ = 0，所有代码路径保持一致。
    - 只有在 Dedekind 检验通过（p 不整除指标 [𝒪_K : Z[θ]]）时才认证分裂数据，
      否则在报告中设置 index_caveat，依赖分类的运算会拒绝执行。

典型用法示例:
    K = make_field([1, -2, -1, 1])            # x³ - x² - 2x + 1
    K.disc                                    # -> 49
    split_prime(K, 7).ramified_root           # -> 5
    norm(K.theta + 4)                         # -> 71
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional, Sequence, Union

import numpy as np
import sympy
from sympy import Matrix, Poly, QQ, ZZ

from arith_core import INFINITY, Rational, is_prime, is_smooth_rational, valuation
from config import DEFAULT_SEED, IRREDUCIBILITY_PRIMES
from errors import (
    DomainError, FieldMismatchError, InvariantViolation, PreconditionError, ReducibleError
)
from polyfp import PolyFp, factor_fp, is_irreducible_fp

logger = logging.getLogger(__name__)

_X = sympy.Symbol("x")

Classification = Literal["inert", "totally_ramified", "other"]
ResidueSign = Literal["+1", "-1", "neither"]
ElemOp = Literal["add", "sub", "mul", "div"]


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _sympy_poly(coeffs: Sequence, domain=ZZ) -> Poly:
    return Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction)
                               else int(c) for c in coeffs])), _X, domain=domain)


def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# =============================================================================
# 数域与元素
# =============================================================================

class NumberField:
    """数域 K = Q[x]/(f)。

    构造后不可变，可以在线程之间共享；Dedekind 检验结果按素数缓存。
    请使用 make_field() 构造，它会检验不可约性并计算判别式。

    Attributes:
        f (tuple[int, ...]): 首一定义多项式，常数项在前
        degree (int): 次数 m = [K:Q]
        disc (int): f 的判别式 (-1)^(m(m-1)/2)·Res(f, f')
    """

    def __init__(self, f: Sequence[int], disc: int) -> None:
        self.f: tuple[int, ...] = tuple(int(c) for c in f)
        self.degree: int = len(self.f) - 1
        self.disc: int = disc
        self._dedekind: dict[int, bool] = {}
        self._splitting: dict[int, "SplittingReport"] = {}
        self._roots: Optional[np.ndarray] = None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NumberField) and other.f == self.f

    def __hash__(self) -> int:
        return hash(self.f)

    def __repr__(self) -> str:
        return f"NumberField({poly_to_str(self.f)})"

    # ---- 元素构造 ----

    def element(self, coeffs: Sequence[Rational]) -> "FieldElement":
        """由幂基坐标构造元素，长度不足时补零。"""
        if len(coeffs) > self.degree:
            raise DomainError(f"expected at most {self.degree} coordinates, got {len(coeffs)}")
        padded = [Fraction(c) for c in coeffs] + [Fraction(0)] * (self.degree - len(coeffs))
        return FieldElement(self, tuple(padded))

    def scalar(self, c: Rational) -> "FieldElement":
        return self.element([c])

    @property
    def one(self) -> "FieldElement":
        return self.scalar(1)

    @property
    def zero(self) -> "FieldElement":
        return self.scalar(0)

    @property
    def theta(self) -> "FieldElement":
        """生成元 θ（次数为 1 时 θ = 0）。"""
        if self.degree == 1:
            return self.scalar(-self.f[0])
        return self.element([0, 1])

    # ---- 指标与数值数据 ----

    def power_basis_ok(self, p: int) -> bool:
        """Dedekind 检验：p 不整除指标 [𝒪_K : Z[θ]] 时返回 True。"""
        if p not in self._dedekind:
            self._dedekind[p] = _dedekind_test(self.f, p)
        return self._dedekind[p]

    def numeric_roots(self) -> np.ndarray:
        """f 的复数根（numpy，仅用于浮点预筛选）。"""
        if self._roots is None:
            self._roots = np.roots([float(c) for c in reversed(self.f)]).astype(complex)
        return self._roots


@dataclass(frozen=True)
class FieldElement:
    """数域中的元素 α = Σ a_i θ^i，坐标为精确有理数。

    Attributes:
        field (NumberField): 所属数域
        coeffs (tuple[Fraction, ...]): 长度恰为 m 的幂基坐标
    """

    field: NumberField
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.field.degree:
            raise DomainError(f"element needs {self.field.degree} coordinates, got {len(self.coeffs)}")

    def _coerce(self, other: Union["FieldElement", Rational]) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError("elements belong to different fields")
            return other
        return self.field.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        m = self.field.degree
        prod = [Fraction(0)] * (2 * m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        f = self.field.f
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * f[j]
        return FieldElement(self.field, tuple(prod[:m]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integral_coords(self) -> bool:
        """幂基坐标全为整数（即属于 Z[θ]）。"""
        return all(c.denominator == 1 for c in self.coeffs)

    def inverse(self) -> "FieldElement":
        """用 Q[x] 上 A 与 f 的扩展欧几里得算法求逆。"""
        if self.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        if self.is_rational():
            return self.field.scalar(1 / self.coeffs[0])
        inv = _sympy_poly(self.coeffs, QQ).invert(_sympy_poly(self.field.f, QQ))
        out = [_to_fraction(c) for c in reversed(inv.all_coeffs())]
        return self.field.element(out)

    def sort_key(self) -> tuple:
        """规范元素顺序：有理数按数值；一般元素按坐标字典序（高次坐标优先）。"""
        return tuple(reversed(self.coeffs))

    def __str__(self) -> str:
        return poly_to_str(self.coeffs, var="t")


def elem_arith(a: FieldElement, b: FieldElement, op: ElemOp) -> FieldElement:
    """同一数域中两个元素的 add / sub / mul / div。

    Raises:
        FieldMismatchError: 元素属于不同的数域
        ZeroDivisionError: 除以零
        DomainError: op 未知
    """
    if a.field != b.field:
        raise FieldMismatchError("elements belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise DomainError(f"unknown element operation {op!r}")


# =============================================================================
# 构造与不可约性
# =============================================================================

def poly_to_str(coeffs: Sequence, var: str = "x") -> str:
    """把常数项在前的系数列表格式化为可读的多项式字符串。"""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else f"{mag}")
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def _discriminant(f: Sequence[int]) -> int:
    if len(f) == 2:
        return 1
    return int(sympy.discriminant(_sympy_poly(f)))


def make_field(f: Sequence[int], check_irreducible: bool = True) -> NumberField:
    """由首一整系数多项式构造数域。

    不可约性先用辅助素数检验（模某个素数不可约即可断定在 Q 上不可约），
    都不成功时退回 sympy 在 Z 上的精确分解，可约时给出一个因子作为见证。

    Args:
        f (Sequence[int]): 系数列表，常数项在前
        check_irreducible (bool): 已知不可约时（如复合域的无平方特征多项式）可跳过

    Returns:
        NumberField: 构造好的数域

    Raises:
        DomainError: 次数小于 1、非首一或系数不是整数
        ReducibleError: f 在 Q 上可约
    """
    coeffs = list(f)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if any(Fraction(c).denominator != 1 for c in coeffs):
        raise DomainError("field polynomial must have integer coefficients")
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) < 2:
        raise DomainError("field polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise DomainError(f"field polynomial must be monic, leading coefficient is {coeffs[-1]}")
    if check_irreducible and len(coeffs) > 2:
        _assert_irreducible(coeffs)
    return NumberField(coeffs, _discriminant(coeffs))


def _assert_irreducible(f: list[int]) -> None:
    for p in IRREDUCIBILITY_PRIMES:
        if is_irreducible_fp(PolyFp.from_ints(p, f)):
            logger.debug("%s irreducible mod %d", poly_to_str(f), p)
            return
    factors = Poly(list(reversed(f)), _X, domain=ZZ).factor_list()[1]
    if len(factors) == 1 and factors[0][1] == 1:
        return
    witness = [int(c) for c in reversed(factors[0][0].all_coeffs())]
    raise ReducibleError(f"{poly_to_str(f)} is reducible over Q, factor {poly_to_str(witness)}", witness)


# =============================================================================
# 范数与特征多项式
# =============================================================================

def _common_denominator(coeffs: Sequence[Fraction]) -> int:
    den = 1
    for c in coeffs:
        den = math.lcm(den, c.denominator)
    return den


def norm(a: FieldElement) -> Fraction:
    """精确计算 N_{K/Q}(a) = Res(f, A)，A 为 a 的分子多项式。

    f 首一，因此 Res(f, A) = Π A(θ_i)，恰为乘以 a 的线性映射的行列式。
    """
    m = a.field.degree
    if a.is_rational():
        return a.coeffs[0] ** m
    den = _common_denominator(a.coeffs)
    numer = [int(c * den) for c in a.coeffs]
    res = _sympy_poly(a.field.f).resultant(_sympy_poly(numer))
    return Fraction(int(res), den ** m)


def multiplication_matrix(a: FieldElement) -> list[list[Fraction]]:
    """乘以 a 的矩阵：第 j 列是 a·θ^j 的坐标。"""
    m = a.field.degree
    cols = []
    basis = a.field.one
    theta = a.field.element([0, 1]) if m > 1 else a.field.one
    for _ in range(m):
        cols.append((a * basis).coeffs)
        basis = basis * theta
    return [[cols[j][i] for j in range(m)] for i in range(m)]


def char_poly(a: FieldElement) -> list[Fraction]:
    """乘以 a 的特征多项式（首一，常数项在前），常数项为 (-1)^m·N(a)。"""
    M = Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in multiplication_matrix(a)])
    cp = M.charpoly(_X)
    return [_to_fraction(c) for c in reversed(cp.all_coeffs())]


def norms_float(K: NumberField, points: np.ndarray) -> np.ndarray:
    """对一批整数坐标向量（N×m）用 numpy 计算近似范数。"""
    roots = K.numeric_roots()
    vander = np.vander(roots, K.degree, increasing=True).T  # m×m，第 j 行为 θ_i^j
    values = points.astype(float) @ vander
    return np.real(np.prod(values, axis=1))


# =============================================================================
# 素数分裂
# =============================================================================

def _dedekind_test(f: Sequence[int], p: int) -> bool:
    m = len(f) - 1
    if m == 1:
        return True
    fac = factor_fp(PolyFp.from_ints(p, f), seed=DEFAULT_SEED)
    g: list[int] = [1]
    h: list[int] = [1]
    for factor, e in fac.factors:
        lift = list(factor.coeffs)
        g = _int_poly_mul(g, lift)
        for _ in range(e - 1):
            h = _int_poly_mul(h, lift)
    gh = _int_poly_mul(g, h)
    diff = [(f[i] if i < len(f) else 0) - (gh[i] if i < len(gh) else 0) for i in range(max(len(f), len(gh)))]
    if any(c % p for c in diff):
        raise InvariantViolation("Dedekind lift does not reduce to f mod p", (f, p))
    F = PolyFp.from_ints(p, [c // p for c in diff])
    common = F.gcd(PolyFp.from_ints(p, g)).gcd(PolyFp.from_ints(p, h))
    return common.degree == 0


@dataclass(frozen=True)
class SplittingReport:
    """有理素数 p 在数域中的分裂模式。

    Attributes:
        p (int): 有理素数
        pattern (tuple): (剩余次数, 分歧指数) 对，按规范顺序
        classification (str): "inert" / "totally_ramified" / "other"
        index_caveat (bool): p 可能整除指标时为 True，此时 pattern 只反映 f mod p
        ramified_root (Optional[int]): f ≡ (x-c)^m (mod p) 时的 c
    """

    p: int
    pattern: tuple[tuple[int, int], ...]
    classification: Classification
    index_caveat: bool
    ramified_root: Optional[int]
    degree: int

    @property
    def is_inert(self) -> bool:
        return self.pattern == ((self.degree, 1),)

    @property
    def is_totally_ramified(self) -> bool:
        return self.pattern == ((1, self.degree),)

    def describe(self) -> str:
        if self.classification == "inert":
            text = "inert"
        elif self.classification == "totally_ramified":
            text = f"totally ramified, root {self.ramified_root}"
        else:
            text = "other"
        if self.index_caveat:
            text += " (index caveat: pattern read from f mod p only)"
        return text


def split_prime(K: NumberField, p: int) -> SplittingReport:
    """用 f mod p 的分解和 Dedekind 检验给出 p 在 K 中的分裂报告。

    次数为 1 时模式 {(1,1)} 同时满足惰性与全分歧，分类标签记为 "inert"。

    Raises:
        DomainError: p 不是素数
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p in K._splitting:
        return K._splitting[p]
    fac = factor_fp(PolyFp.from_ints(p, K.f))
    pattern = tuple(sorted((g.degree, e) for g, e in fac.factors))
    m = K.degree
    caveat = not K.power_basis_ok(p)
    if caveat:
        logger.warning("prime %d may divide the index of Z[theta] for %s", p, poly_to_str(K.f))
    if pattern == ((m, 1),):
        classification: Classification = "inert"
    elif pattern == ((1, m),):
        classification = "totally_ramified"
    else:
        classification = "other"
    root = None
    if pattern == ((1, m),):
        root = (-fac.factors[0][0].coeffs[0]) % p
    report = SplittingReport(p, pattern, classification, caveat, root, m)
    K._splitting[p] = report
    return report


def _require_inert(K: NumberField, p: int) -> SplittingReport:
    report = split_prime(K, p)
    if report.index_caveat:
        raise PreconditionError(f"{p} may divide the index; valuations are not certified")
    if not report.is_inert:
        raise PreconditionError(f"{p} is not inert (pattern {report.pattern})")
    return report


def _require_totally_ramified(K: NumberField, p: int, assume_ramified: bool = False) -> SplittingReport:
    report = split_prime(K, p)
    if report.index_caveat and not (assume_ramified and report.ramified_root is not None):
        raise PreconditionError(f"{p} may divide the index; residues are not certified")
    if not report.is_totally_ramified:
        raise PreconditionError(f"{p} is not totally ramified (pattern {report.pattern})")
    return report


# =============================================================================
# 赋值与剩余
# =============================================================================

def val_inert(a: FieldElement, p: int):
    """惰性素数 𝔓 = p𝒪_K 处的赋值：幂基坐标 p 进赋值的最小值。

    p 惰性且不整除指标时 𝒪_K ⊗ Z_p = Z_p[θ]，所以该公式成立。
    a = 0 时返回 INFINITY。

    Raises:
        PreconditionError: p 不惰性或带有指标警告
    """
    _require_inert(a.field, p)
    if a.is_zero():
        return INFINITY
    return min(valuation(c, p) for c in a.coeffs if c)


def residue_totally_ramified(a: FieldElement, p: int, assume_ramified: bool = False) -> int:
    """全分歧素数 𝔮 = (p, θ - c) 处的剩余 Σ a_i c^i mod p ∈ F_p。

    assume_ramified 为 True 表示调用方已知 p 在域中全分歧（例如分圆层中的 l），
    此时即使 p 整除指标也继续：f ≡ (x-c)^m (mod p) 时 θ 在 𝒪_K/𝔮 中的像只能是 c，
    所以该公式对 Z[θ] 中（p 整坐标）的元素依然成立。

    Raises:
        PreconditionError: 分类不符、带有指标警告（且未声明全分歧），或坐标不是 p 整的
    """
    report = _require_totally_ramified(a.field, p, assume_ramified)
    c = report.ramified_root
    total = 0
    for i, coeff in enumerate(a.coeffs):
        if coeff.denominator % p == 0:
            raise PreconditionError(f"coordinate {coeff} is not {p}-integral")
        total += coeff.numerator * pow(coeff.denominator, -1, p) * pow(c, i, p)
    return total % p


def residue_sign(u: FieldElement, p: int, assume_ramified: bool = False) -> ResidueSign:
    """把 u 在 𝒪_K/𝔮 ≅ F_p 中的剩余分类为 +1、-1 或 neither（p = 2 时 1 记为 +1）。"""
    r = residue_totally_ramified(u, p, assume_ramified)
    if r == 1 % p:
        return "+1"
    if r == p - 1:
        return "-1"
    return "neither"


def norm_congruence_check(a: FieldElement, b: FieldElement, n: int) -> bool:
    """验证 a ≡ b (mod 𝔓^n) ⇒ N(a) ≡ N(b) (mod 2^n)，其中 2 在域中惰性。

    前置条件不满足时抛出异常而不是返回 False。

    Raises:
        PreconditionError: 2 不惰性、坐标非 2 整，或 v_𝔓(a-b) < n
    """
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    for elem in (a, b):
        if any(c.denominator % 2 == 0 for c in elem.coeffs):
            raise PreconditionError("elements must be integral at 2")
    if val_inert(a - b, 2) < n:
        raise PreconditionError(f"a and b are not congruent modulo P^{n}")
    return valuation(norm(a) - norm(b), 2) >= n


# =============================================================================
# 全实性与 S-单位
# =============================================================================

def is_totally_real(K: NumberField) -> bool:
    """用 Sturm 计数（sympy）判断 f 的根是否全部为实数。"""
    return int(_sympy_poly(K.f).count_roots()) == K.degree


def is_s_unit(a: FieldElement, primes: Sequence[int]) -> bool:
    """a 是否为 S-单位（S 为 primes 之上的全部素理想）。

    判据：坐标的分母只含 S 中的素数（故 a ∈ Z[θ][1/S] ⊆ 𝒪_S），
    且 N(a) = ±Π p^e。两者合起来说明 a 在 S 之外的赋值全为零。
    这是充分条件；指标问题导致的漏判只会使结果偏保守。
    """
    if a.is_zero():
        return False
    primes = tuple(primes)
    if not all(is_smooth_rational(Fraction(c.denominator), primes) for c in a.coeffs):
        return False
    return is_smooth_rational(norm(a), primes)


def s_valuations(a: FieldElement, primes: Sequence[int]) -> dict[int, object]:
    """a 在每个（惰性）素数处的赋值。"""
    return {p: val_inert(a, p) for p in primes}


# =============================================================================
# 域描述文件
# =============================================================================

def parse_field_spec(text: str) -> tuple[list[int], dict[str, str]]:
    """解析域描述文本：整数系数（常数项在前，空白或逗号分隔），'#' 开头为注释。

    形如 "# key: value" 的注释行作为元数据返回。

    Raises:
        DomainError: 出现非整数记号或没有系数
    """
    coeffs: list[int] = []
    meta: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, value = body.split(":", 1)
                meta[key.strip()] = value.strip()
            continue
        for token in line.replace(",", " ").split():
            try:
                coeffs.append(int(token))
            except ValueError as exc:
                raise DomainError(f"field spec token {token!r} is not an integer") from exc
    if not coeffs:
        raise DomainError("field spec contains no coefficients")
    return coeffs, meta


def read_field_spec(path: Union[str, Path]) -> tuple[list[int], dict[str, str]]:
    """读取域描述文件。"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read field spec {path}: {exc}") from exc
    return parse_field_spec(text)


def write_field_spec(coeffs: Sequence[int], meta: Optional[dict[str, str]] = None) -> str:
    """把系数与元数据写成域描述文本（与 parse_field_spec 互逆）。"""
    lines = [f"# {k}: {v}" for k, v in (meta or {}).items()]
    lines.append(f"# polynomial: {poly_to_str(coeffs)}")
    lines.append(" ".join(str(int(c)) for c in coeffs))
    return "\n".join(lines) + "\n"
