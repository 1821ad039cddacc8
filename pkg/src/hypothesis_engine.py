#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""定理假设检验引擎模块。

本模块把各条主定理（层上的渐近费马、系数为 u·2^r 的广义费马方程、
系数为 u·2^r·d^s 的两种情形）以及单位方程定理、S-单位赋值引理、赋值上界命题
的假设逐条机械化：每一条假设给出真值、证据和警告标记，汇总成证书。
结论只有在全部假设为真且没有致命警告时才会被断言，否则为 "not applicable"。

h⁺ 的奇偶性不被计算，只作为带来源的声明输入，并在证书中显式标注。
模性相关的有效性条款只被引用，从不验证。

典型用法示例:
    sc = Scenario(l=7, n=1, d=5,
                  coeffs_ABC=(CoeffDescriptor(1, 0, 0), CoeffDescriptor(-1, 1, 1), CoeffDescriptor(1, 4, 2)),
                  h_plus=HPlusDeclaration("odd", "table"))
    cert = check_theorem_gfe_Q_layers_2d(sc)
    cert.all_passed                            # -> True
    print(certificate_to_json(cert))
"""

import itertools
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Literal, Optional, Sequence

import numpy as np

from arith_core import is_prime, mod_pow, primes_in_range, wieferich_test
from config import (
    H_PLUS_CHOICES, ODD_SQUARES_MOD_32, SCAN_WORKERS, SQRT_MOD_P5_BOX_CAP, VALUATION_BOUND
)
from cyclotomic_layers import inert_in_layer
from errors import (
    DomainError, InvariantViolation, MissingInputError, PreconditionError, WrongTheoremError
)
from numberfield import NumberField, is_totally_real, make_field, poly_to_str, split_prime

logger = logging.getLogger(__name__)

TheoremId = Literal[
    "T_AFLT_layers", "T_GFE_layers", "T_GFE_K_2d", "T_GFE_Q_layers_2d",
    "Prop_bound", "T_unit_equation", "Lemma_valuations",
]

NOT_APPLICABLE: str = "not applicable"

EFFECTIVITY_QUOTED: str = ("quoted, not verified: if all elliptic curves with full 2-torsion over the "
                           "field are modular, the conclusion is effective")
EFFECTIVITY_Q_LAYERS: str = ("quoted, not verified: every elliptic curve over Q_{n,l} is modular "
                             "(a known theorem), so the constant V is effectively computable")
EFFECTIVITY_NONE: str = "no effectivity clause"

INTEGER_COEFFS_NOTE: str = ("A, B, C are rational integers: an external result removes the hypothesis "
                            "A +- B +- C != 0 in this case; the sign-sum check is still enforced here")
H_PLUS_NOTE: str = "h+ parity is a declared input and was not computed"


# =============================================================================
# 场景
# =============================================================================

@dataclass(frozen=True)
class CoeffDescriptor:
    """系数 u·2^r·d^s 的描述符。

    Attributes:
        u (int): 单位标记，只允许 +1 或 -1
        r (int): 2 的指数
        s (int): d 的指数
    """

    u: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.u not in (1, -1):
            raise DomainError(f"unit flag must be +1 or -1, got {self.u}")
        if self.r < 0 or self.s < 0:
            raise DomainError(f"exponents must be non-negative, got r={self.r}, s={self.s}")

    def value(self, d: Optional[int]) -> int:
        """系数的整数值；s > 0 时需要 d。"""
        if self.s and d is None:
            raise MissingInputError("descriptor uses d but the scenario has no d")
        return self.u * 2 ** self.r * (d ** self.s if self.s else 1)

    def echo(self) -> dict:
        return {"u": self.u, "r": self.r, "s": self.s}

    def __str__(self) -> str:
        return f"{self.u},{self.r},{self.s}"


def parse_descriptor(text: str) -> CoeffDescriptor:
    """解析命令行的 "u,r,s" 语法，例如 "-1,2,1"。"""
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"coefficient descriptor must be u,r,s, got {text!r}")
    try:
        u, r, s = (int(p) for p in parts)
    except ValueError as exc:
        raise DomainError(f"coefficient descriptor must contain integers, got {text!r}") from exc
    return CoeffDescriptor(u, r, s)


@dataclass(frozen=True)
class HPlusDeclaration:
    """窄类数 h⁺ 奇偶性的声明，必须注明来源。"""

    parity: str
    provenance: str

    def __post_init__(self) -> None:
        if self.parity not in H_PLUS_CHOICES:
            raise DomainError(f"h+ parity must be one of {H_PLUS_CHOICES}, got {self.parity!r}")
        if not self.provenance:
            raise DomainError("h+ declaration needs a provenance")


def parse_h_plus(text: str) -> HPlusDeclaration:
    """解析 "odd:<来源>" / "even:<来源>"。"""
    parity, sep, provenance = text.partition(":")
    if not sep:
        raise DomainError(f"--h-plus must look like odd:<provenance>, got {text!r}")
    return HPlusDeclaration(parity, provenance)


@dataclass(frozen=True)
class Scenario:
    """一组定理输入 (K, l, n, d, A, B, C, h⁺)，缺省的字段为 None。

    field_K 为 None 时按 Q 处理。
    """

    field_K: Optional[NumberField] = None
    l: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    coeffs_ABC: Optional[tuple[CoeffDescriptor, CoeffDescriptor, CoeffDescriptor]] = None
    h_plus: Optional[HPlusDeclaration] = None

    def __post_init__(self) -> None:
        if self.l is not None and not is_prime(self.l):
            raise DomainError(f"l = {self.l} is not prime")
        if self.d is not None and (self.d < 3 or not is_prime(self.d)):
            raise DomainError(f"d = {self.d} is not an odd prime")
        if self.n is not None and self.n < 1:
            raise DomainError(f"layer index must be positive, got {self.n}")
        if self.coeffs_ABC is not None and len(self.coeffs_ABC) != 3:
            raise DomainError("coeffs_ABC must hold exactly three descriptors")

    @cached_property
    def field(self) -> NumberField:
        return self.field_K if self.field_K is not None else make_field([0, 1])

    @property
    def m(self) -> int:
        return self.field.degree

    def echo(self) -> dict:
        """证书中的场景回显（键顺序固定）。"""
        K = self.field
        return {
            "field": list(K.f),
            "field_polynomial": poly_to_str(K.f),
            "degree": K.degree,
            "l": self.l,
            "n": self.n,
            "d": self.d,
            "coeffs_ABC": None if self.coeffs_ABC is None else [c.echo() for c in self.coeffs_ABC],
            "h_plus": None if self.h_plus is None else {"parity": self.h_plus.parity,
                                                       "provenance": self.h_plus.provenance},
        }


def _require(sc: Scenario, *names: str) -> None:
    missing = [name for name in names if getattr(sc, name) is None]
    if missing:
        raise MissingInputError(f"scenario is missing {', '.join(missing)}")


# =============================================================================
# 证书
# =============================================================================

@dataclass(frozen=True)
class Check:
    """单条假设的检验结果。

    Attributes:
        label (str): 假设名称
        verdict (bool): 是否成立
        evidence (str): 证据（计算结果）
        caveat (bool): 该结论是否依赖未经计算的输入或未认证的数据
        fatal (bool): 警告是否足以阻止结论
    """

    label: str
    verdict: bool
    evidence: str
    caveat: bool = False
    fatal: bool = False


@dataclass(frozen=True)
class Certificate:
    """定理证书。"""

    scenario: dict
    theorem_id: TheoremId
    checks: tuple[Check, ...]
    conclusion: str
    effectivity_note: str
    notes: tuple[str, ...] = ()

    @property
    def all_passed(self) -> bool:
        return self.conclusion != NOT_APPLICABLE

    @property
    def failed_labels(self) -> list[str]:
        return [c.label for c in self.checks if not c.verdict]


def build_certificate(theorem_id: TheoremId, scenario: dict, checks: Sequence[Check], statement: str,
                      effectivity_note: str, notes: Sequence[str] = ()) -> Certificate:
    """汇总检验结果：全部成立且无致命警告时才写入结论 statement。"""
    applicable = all(c.verdict and not (c.caveat and c.fatal) for c in checks)
    conclusion = statement if applicable else NOT_APPLICABLE
    return Certificate(scenario, theorem_id, tuple(checks), conclusion, effectivity_note, tuple(notes))


def certificate_to_json(cert: Certificate) -> str:
    """稳定键顺序的 JSON 序列化，用于黄金文件比对。"""
    doc = {
        "scenario": cert.scenario,
        "theorem_id": cert.theorem_id,
        "checks": [
            {"label": c.label, "verdict": c.verdict, "evidence": c.evidence,
             "caveat": c.caveat, "fatal": c.fatal}
            for c in cert.checks
        ],
        "conclusion": cert.conclusion,
        "effectivity_note": cert.effectivity_note,
        "notes": list(cert.notes),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def certificate_from_json(text: str) -> Certificate:
    """读回 certificate_to_json 的输出，并复核结论与检验结果一致。

    Raises:
        InvariantViolation: 结论与检验结果矛盾
    """
    doc = json.loads(text)
    checks = tuple(Check(c["label"], c["verdict"], c["evidence"], c["caveat"], c["fatal"])
                   for c in doc["checks"])
    cert = Certificate(doc["scenario"], doc["theorem_id"], checks, doc["conclusion"],
                       doc["effectivity_note"], tuple(doc.get("notes", ())))
    applicable = all(c.verdict and not (c.caveat and c.fatal) for c in checks)
    if applicable != (cert.conclusion != NOT_APPLICABLE):
        raise InvariantViolation("certificate conclusion contradicts its checks", cert.theorem_id)
    return cert


# =============================================================================
# 单条假设
# =============================================================================

def _check_inert(K: NumberField, p: int, where: str = "K") -> Check:
    report = split_prime(K, p)
    return Check(f"{p} inert in {where}", report.is_inert,
                 f"pattern {list(report.pattern)}: {report.describe()}",
                 caveat=report.index_caveat, fatal=report.index_caveat)


def _check_totally_ramified(K: NumberField, p: int, where: str = "K") -> Check:
    report = split_prime(K, p)
    return Check(f"{p} totally ramified in {where}", report.is_totally_ramified,
                 f"pattern {list(report.pattern)}: {report.describe()}",
                 caveat=report.index_caveat, fatal=report.index_caveat)


def _check_non_wieferich(base: int, l: int) -> Check:
    label = f"{base}^(l-1) != 1 mod l^2"
    try:
        report = wieferich_test(base, l)
    except DomainError as exc:
        return Check(label, False, f"not evaluated: {exc}")
    return Check(label, not report.is_wieferich_pair,
                 f"{base}^{l - 1} = {report.residue} mod {l * l}")


def _check_l_at_least_5(l: int) -> Check:
    return Check("l >= 5 prime", l >= 5 and is_prime(l), f"l = {l}")


def _check_l_coprime_degree(l: int, m: int) -> Check:
    return Check("l does not divide [K:Q]", m % l != 0, f"{m} mod {l} = {m % l}")


def _check_gcd(l: int, m: int) -> Check:
    g = math.gcd((l - 1) // 2, m)
    return Check("gcd((l-1)/2, [K:Q]) = 1", g == 1, f"gcd({(l - 1) // 2}, {m}) = {g}")


def _check_totally_real(K: NumberField) -> Check:
    return Check("K totally real", is_totally_real(K), f"real roots of {poly_to_str(K.f)} counted exactly")


def _check_h_plus(sc: Scenario, name: str) -> Check:
    if sc.h_plus is None:
        raise MissingInputError(f"{name}: the parity of h+ must be declared (--h-plus odd:<provenance>); "
                                "it is never computed")
    logger.warning("using declared h+ parity %s (%s)", sc.h_plus.parity, sc.h_plus.provenance)
    return Check(f"h+ of {name} odd (declared)", sc.h_plus.parity == "odd",
                 f"declared {sc.h_plus.parity}, source: {sc.h_plus.provenance}", caveat=True)


def _check_d_mod_4(d: int) -> Check:
    return Check("d = 1 mod 4", d % 4 == 1, f"{d} mod 4 = {d % 4}")


def _check_mod_32(value: int, label: str, evidence: str) -> Check:
    r = value % 32
    return Check(label, r not in ODD_SQUARES_MOD_32, f"{evidence} = {r} mod 32")


def _aflt_checks(sc: Scenario) -> list[Check]:
    K, l, m = sc.field, sc.l, sc.m
    checks = [
        Check("[K:Q] odd", m % 2 == 1, f"[K:Q] = {m}"),
        _check_inert(K, 2),
        _check_l_at_least_5(l),
        _check_l_coprime_degree(l, m),
        _check_gcd(l, m),
        _check_non_wieferich(2, l),
    ]
    if is_prime(l):
        checks.append(_check_totally_ramified(K, l))
    else:
        checks.append(Check(f"{l} totally ramified in K", False, "l is not prime"))
    checks.append(_check_totally_real(K))
    return checks


def _coefficient_checks(sc: Scenario) -> list[Check]:
    A, B, C = (c.value(None) for c in sc.coeffs_ABC)
    sums = {f"A{s1}B{s2}C": A + (B if s1 == "+" else -B) + (C if s2 == "+" else -C)
            for s1, s2 in itertools.product("+-", repeat=2)}
    # 2 惰性时 v_P(u·2^r) = r
    vA, vB, vC = (c.r for c in sc.coeffs_ABC)
    return [
        Check("A +- B +- C != 0", all(v != 0 for v in sums.values()),
              ", ".join(f"{k} = {v}" for k, v in sums.items())),
        Check("max{v_P(A), v_P(BC)} <= 4", max(vA, vB + vC) <= VALUATION_BOUND,
              f"v_P(A) = {vA}, v_P(BC) = {vB + vC}"),
        Check("v_P(ABC) = 0 or 2 mod 3", (vA + vB + vC) % 3 in (0, 2),
              f"v_P(ABC) = {vA + vB + vC}, {(vA + vB + vC) % 3} mod 3"),
    ]


# =============================================================================
# 定理检验
# =============================================================================

def check_theorem_aflt_layers(sc: Scenario) -> Certificate:
    """层 K_{n,l} 上渐近费马大定理的假设检验。

    检验顺序：[K:Q] 奇；2 在 K 中惰性；l ≥ 5；l ∤ [K:Q]；gcd((l-1)/2, [K:Q]) = 1；
    l 对底数 2 不是 Wieferich 素数；l 在 K 中全分歧；K 全实。

    Raises:
        MissingInputError: 缺少 l 或 n
    """
    _require(sc, "l", "n")
    checks = _aflt_checks(sc)
    statement = (f"the asymptotic Fermat's Last Theorem holds over K_{{{sc.n},{sc.l}}} = K * Q_{{{sc.n},{sc.l}}} "
                 f"(and over every layer K_{{n,{sc.l}}}, n >= 1)")
    return build_certificate("T_AFLT_layers", sc.echo(), checks, statement, EFFECTIVITY_QUOTED)


def check_theorem_gfe_layers(sc: Scenario) -> Certificate:
    """A、B、C ∈ {u·2^r} 时 Ax^p + By^p + Cz^p = 0 在 K_{n,l} 上的假设检验。

    在渐近费马的全部检验之后追加三条系数条件。

    Raises:
        MissingInputError: 缺少 l、n 或系数
        WrongTheoremError: 某个系数含 d 的幂，应改用 2d 版本
    """
    _require(sc, "l", "n", "coeffs_ABC")
    if any(c.s for c in sc.coeffs_ABC):
        raise WrongTheoremError("coefficients involve d^s with s > 0; use gfe-K-2d or gfe-Q-2d")
    checks = _aflt_checks(sc) + _coefficient_checks(sc)
    A, B, C = (c.value(None) for c in sc.coeffs_ABC)
    statement = (f"{A}x^p + {B}y^p + {C}z^p = 0 has no asymptotic solution in K_{{{sc.n},{sc.l}}}^3 "
                 f"(and in every layer K_{{n,{sc.l}}}^3, n >= 1)")
    return build_certificate("T_GFE_layers", sc.echo(), checks, statement, EFFECTIVITY_QUOTED,
                             (INTEGER_COEFFS_NOTE,))


def has_square_root_mod_32(K: NumberField, d: int) -> Optional[bool]:
    """判断 d ≡ v² (mod 𝔓⁵) 是否有解，其中 𝔓 = 2𝒪_K 惰性。

    32^m 不超过 config.SQRT_MOD_P5_BOX_CAP 时在 (Z/32)[x]/(f) 中枚举全部单位 v，结果精确；
    否则用范数判据：d^m mod 32 不是奇平方则无解，否则返回 None（无法判定）。

    Raises:
        PreconditionError: 2 不惰性或带有指标警告
    """
    report = split_prime(K, 2)
    if report.index_caveat or not report.is_inert:
        raise PreconditionError("2 must be inert with a certified power basis")
    m = K.degree
    if 32 ** m > SQRT_MOD_P5_BOX_CAP:
        if mod_pow(d, m, 32) not in ODD_SQUARES_MOD_32:
            return False
        return None
    v = np.array(list(itertools.product(range(32), repeat=m)), dtype=np.int64)
    v = v[(v % 2).any(axis=1)]
    sq = np.zeros((v.shape[0], 2 * m - 1), dtype=np.int64)
    for i in range(m):
        sq[:, i:i + m] += v[:, i:i + 1] * v
    sq %= 32
    f = np.array(K.f[:m], dtype=np.int64)
    for k in range(2 * m - 2, m - 1, -1):
        sq[:, k - m:k] -= sq[:, k:k + 1] * f
        sq[:, k - m:k] %= 32
    target = np.zeros(m, dtype=np.int64)
    target[0] = d % 32
    return bool((sq[:, :m] == target).all(axis=1).any())


def _check_no_sqrt_mod_p5(K: NumberField, d: int) -> Check:
    label = "d = v^2 mod P^5 has no solution"
    try:
        found = has_square_root_mod_32(K, d)
    except PreconditionError as exc:
        return Check(label, False, f"not evaluated: {exc}")
    if found is None:
        return Check(label, False, f"undecided: 32^{K.degree} exceeds the enumeration cap and "
                                   f"{d}^{K.degree} is an odd square mod 32")
    method = "enumerated O/32O" if 32 ** K.degree <= SQRT_MOD_P5_BOX_CAP else "norm criterion"
    return Check(label, not found, f"{method}: {'a square root exists' if found else 'no square root'}")


def check_theorem_gfe_K_2d(sc: Scenario) -> Certificate:
    """A、B、C ∈ {u·2^r·d^s} 时 K 上满足 𝔓 | abc 的解的假设检验。

    Raises:
        MissingInputError: 缺少 d、系数或 h⁺ 声明
    """
    _require(sc, "d", "coeffs_ABC")
    K, d, m = sc.field, sc.d, sc.m
    checks = [
        _check_h_plus(sc, "K"),
        _check_inert(K, 2),
        _check_d_mod_4(d),
        _check_inert(K, d),
        _check_mod_32(mod_pow(d, m, 32), "d^[K:Q] not in {1,9,17,25} mod 32", f"{d}^{m}"),
        _check_totally_real(K),
    ]
    A, B, C = (c.value(d) for c in sc.coeffs_ABC)
    statement = (f"{A}x^p + {B}y^p + {C}z^p = 0 has no asymptotic solution (a, b, c) in O_K^3 "
                 f"with P | abc, P = 2O_K")
    return build_certificate("T_GFE_K_2d", sc.echo(), checks, statement, EFFECTIVITY_QUOTED, (H_PLUS_NOTE,))


def check_theorem_gfe_Q_layers_2d(sc: Scenario) -> Certificate:
    """A、B、C ∈ {±2^r·d^s} 时 Q_{n,l} 上满足 2 | abc 的解的假设检验。

    Raises:
        MissingInputError: 缺少 l、n、d、系数或 h⁺ 声明
    """
    _require(sc, "l", "n", "d", "coeffs_ABC")
    l, n, d = sc.l, sc.n, sc.d
    checks = [
        Check("d != l", d != l, f"d = {d}, l = {l}"),
        _check_l_at_least_5(l),
        _check_non_wieferich(2, l),
        _check_d_mod_4(d),
        _check_non_wieferich(d, l),
        _check_mod_32(d, "d not in {1,9,17,25} mod 32", f"{d}"),
        _check_h_plus(sc, f"Q_{{{n},{l}}}"),
    ]
    A, B, C = (c.value(d) for c in sc.coeffs_ABC)
    statement = (f"{A}x^p + {B}y^p + {C}z^p = 0 has no effective asymptotic solution (a, b, c) in "
                 f"O_{{Q_{{{n},{l}}}}}^3 with 2 | abc")
    return build_certificate("T_GFE_Q_layers_2d", sc.echo(), checks, statement, EFFECTIVITY_Q_LAYERS,
                             (H_PLUS_NOTE,))


def check_unit_equation_theorem(sc: Scenario) -> Certificate:
    """单位方程 λ + μ = 1 在每一层 F_{n,l} 上无解的假设检验（F 为 field_K）。

    Raises:
        MissingInputError: 缺少 l
    """
    _require(sc, "l")
    K, l, m = sc.field, sc.l, sc.m
    checks = [_check_totally_ramified(K, l, "F")]
    if l == 2:
        checks.append(Check("l = 2, or l >= 5 with l not dividing m and gcd((l-1)/2, m) = 1", True, "l = 2"))
    else:
        g = math.gcd((l - 1) // 2, m)
        ok = l >= 5 and m % l != 0 and g == 1
        checks.append(Check("l = 2, or l >= 5 with l not dividing m and gcd((l-1)/2, m) = 1", ok,
                            f"l = {l}, m = {m}, m mod l = {m % l}, gcd = {g}"))
    statement = (f"the unit equation lambda + mu = 1 has no solution in units of F_{{n,{l}}} "
                 f"for every n >= 1")
    return build_certificate("T_unit_equation", sc.echo(), checks, statement, EFFECTIVITY_NONE)


def derived_inertness_in_layer(K: NumberField, d: int, l: int) -> bool:
    """d 在 K_{n,l} 中惰性当且仅当 d 在 K 和 Q_{n,l} 中都惰性（两者次数互素）。

    Raises:
        DomainError: l 整除 [K:Q]，或 d、l 不符合 inert_in_layer 的要求
    """
    if K.degree % l == 0:
        raise DomainError(f"l = {l} divides [K:Q] = {K.degree}")
    return split_prime(K, d).is_inert and inert_in_layer(d, l)


def check_sunit_lemma(sc: Scenario) -> Certificate:
    """S = {2} 时 K_{n,l} 上 S-单位解赋值分类引理的假设检验。

    Raises:
        MissingInputError: 缺少 l 或 n
    """
    _require(sc, "l", "n")
    K, l, m = sc.field, sc.l, sc.m
    checks = [
        _check_totally_real(K),
        Check("[K:Q] odd", m % 2 == 1, f"[K:Q] = {m}"),
        _check_l_at_least_5(l),
        _check_totally_ramified(K, l) if is_prime(l) else Check(f"{l} totally ramified in K", False, "l is not prime"),
        _check_l_coprime_degree(l, m),
        _check_gcd(l, m),
    ]
    label = f"2 inert in K_{{{sc.n},{l}}}"
    try:
        inert = derived_inertness_in_layer(K, 2, l)
        report = split_prime(K, 2)
        checks.append(Check(label, inert,
                            f"2 {'inert' if report.is_inert else 'not inert'} in K; "
                            f"2^{l - 1} = {mod_pow(2, l - 1, l * l)} mod {l * l}",
                            caveat=report.index_caveat, fatal=report.index_caveat))
    except DomainError as exc:
        checks.append(Check(label, False, f"not evaluated: {exc}"))
    statement = (f"every solution of lambda + mu = 1 in {{2}}-units of K_{{{sc.n},{l}}} has "
                 f"(v_P(lambda), v_P(mu)) in {{(1,0), (0,1), (-1,-1)}}")
    return build_certificate("Lemma_valuations", sc.echo(), checks, statement, EFFECTIVITY_NONE)


def check_proposition_bound(sc: Scenario) -> Certificate:
    """S = {𝔓 | 2d} 时 max{|v_𝔓(λ)|, |v_𝔓(μ)|} ≤ 4 的假设检验。

    Raises:
        MissingInputError: 缺少 d 或 h⁺ 声明
    """
    _require(sc, "d")
    K, d = sc.field, sc.d
    checks = [
        _check_inert(K, 2),
        _check_h_plus(sc, "K"),
        _check_d_mod_4(d),
        _check_inert(K, d),
        _check_no_sqrt_mod_p5(K, d),
    ]
    statement = (f"every solution of lambda + mu = 1 in S-units of K, S = primes above {2 * d}, "
                 f"has max{{|v_P(lambda)|, |v_P(mu)|}} <= {VALUATION_BOUND}")
    return build_certificate("Prop_bound", sc.echo(), checks, statement, EFFECTIVITY_NONE, (H_PLUS_NOTE,))


THEOREM_CHECKS: dict[str, Callable[[Scenario], Certificate]] = {
    "aflt-layers": check_theorem_aflt_layers,
    "gfe-layers": check_theorem_gfe_layers,
    "gfe-K-2d": check_theorem_gfe_K_2d,
    "gfe-Q-2d": check_theorem_gfe_Q_layers_2d,
    "unit-equation": check_unit_equation_theorem,
    "prop-bound": check_proposition_bound,
    "lemma-valuations": check_sunit_lemma,
}


# =============================================================================
# 同余过滤
# =============================================================================

def odd_squares_mod32() -> set[int]:
    """计算 {a² mod 32 : a 奇}，并断言它等于 {1, 9, 17, 25}。"""
    result = {a * a % 32 for a in range(1, 32, 2)}
    if result != ODD_SQUARES_MOD_32:
        raise InvariantViolation("odd squares mod 32 differ from {1, 9, 17, 25}", sorted(result))
    return result


def _valid_d_chunk(args: tuple[int, list[int]]) -> list[int]:
    l, candidates = args
    return [d for d in candidates
            if d != l and d % 4 == 1 and d % 32 not in ODD_SQUARES_MOD_32
            and mod_pow(d, l - 1, l * l) != 1]


def search_valid_d(l: int, d_max: int, workers: int = SCAN_WORKERS) -> list[int]:
    """列出全部满足 d ≡ 1 (mod 4)、d mod 32 不是奇平方、d^(l-1) ≢ 1 (mod l²) 的素数 d ≤ d_max。

    Raises:
        DomainError: l 不是 ≥ 5 的素数
        PreconditionError: l 对底数 2 是 Wieferich 素数（对所有 d 都阻断）
    """
    if l < 5 or not is_prime(l):
        raise DomainError(f"l must be a prime >= 5, got {l}")
    if wieferich_test(2, l).is_wieferich_pair:
        raise PreconditionError(f"l = {l} is a base-2 Wieferich prime: no d can satisfy the hypotheses")
    primes = [p for p in primes_in_range(3, d_max)]
    if workers > 1 and len(primes) > workers:
        size = math.ceil(len(primes) / workers)
        tasks = [(l, primes[i:i + size]) for i in range(0, len(primes), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_valid_d_chunk, tasks))
        return [d for chunk in chunks for d in chunk]
    return _valid_d_chunk((l, primes))
