#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""S-单位方程搜索模块。

本模块在桌面规模下穷举单位方程与 S-单位方程 λ + μ = 1 的解：
先在坐标盒 [-H, H]^m 中找出全部 S-单位（numpy 浮点范数预筛选，再用精确范数认证），
建立以坐标为键的成员索引，然后扫描 β + γ = δ 的三元组得到 (β/δ, γ/δ)。
有理数域另有按指数窗口直接枚举 ±Π p^e 的快速路径。

搜索的完备性只相对于 H（或指数窗口）成立：结果是真实解集的下界，
报告中的结论一律表述为“在 H 之内没有解”。

典型用法示例:
    cfg = SUnitConfig(make_field([0, 1]), (2,), height_bound=8)
    sols = solve_sunit_equation(cfg)
    [(str(s.lam), str(s.mu)) for s in sols]   # -> [('-1', '2'), ('1/2', '1/2'), ('2', '-1')]
"""

import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

import numpy as np
from tqdm import tqdm

from arith_core import INFINITY, is_prime, is_smooth_rational, valuation
from config import (
    BOX_SIZE_LIMIT, DEFAULT_HEIGHT_BOUND, FLOAT_NORM_CEILING, SCAN_WORKERS,
    SHOW_PROGRESS, VALUATION_BOUND
)
from errors import DomainError, InvariantViolation, PreconditionError
from numberfield import (
    FieldElement, NumberField, is_s_unit, make_field, norms_float, poly_to_str,
    split_prime, val_inert
)

logger = logging.getLogger(__name__)

VerifyMode = Literal["lemma32", "prop_bound"]

LEMMA_VALUATION_SET: frozenset[tuple[int, int]] = frozenset({(1, 0), (0, 1), (-1, -1)})


@dataclass(frozen=True)
class SUnitConfig:
    """S-单位搜索的配置。

    Attributes:
        field (NumberField): 数域
        s_primes (tuple[int, ...]): S 中的有理素数，每个都必须在域中惰性且无指标警告
        height_bound (int): 坐标盒高度 H
        exponent_bound (Optional[int]): 有理数域快速路径的指数窗口，None 表示使用盒扫描
        workers (int): 盒扫描的工作进程数
    """

    field: NumberField
    s_primes: tuple[int, ...]
    height_bound: int = DEFAULT_HEIGHT_BOUND
    exponent_bound: Optional[int] = None
    workers: int = SCAN_WORKERS

    def validate(self) -> None:
        """检查 S 中每个素数都惰性且不整除指标。

        Raises:
            PreconditionError: 某个素数分裂、分歧或带有指标警告
            DomainError: H 不为正或 S 中出现非素数
        """
        if self.height_bound < 1:
            raise DomainError(f"height bound must be positive, got {self.height_bound}")
        for p in self.s_primes:
            if not is_prime(p):
                raise DomainError(f"{p} in S is not prime")
            report = split_prime(self.field, p)
            if report.index_caveat:
                raise PreconditionError(f"{p} in S may divide the index of Z[theta]")
            if not report.is_inert:
                raise PreconditionError(f"{p} in S is not inert (pattern {report.pattern})")

    def echo(self) -> dict:
        """用于报告复现的配置回显。"""
        return {
            "field": list(self.field.f),
            "field_polynomial": poly_to_str(self.field.f),
            "s_primes": list(self.s_primes),
            "height_bound": self.height_bound,
            "exponent_bound": self.exponent_bound,
        }


@dataclass(frozen=True)
class SUnitSolution:
    """S-单位方程的一个解 (λ, μ)。

    Attributes:
        lam (FieldElement): λ
        mu (FieldElement): μ = 1 - λ
        valuations (tuple): ((p, (v_p(λ), v_p(μ))), ...)，按 p 升序
        normalized (bool): 是否已经过轨道规范化
        is_s_unit_pair (bool): λ 与 μ 是否都通过了 S-单位认证
    """

    lam: FieldElement
    mu: FieldElement
    valuations: tuple[tuple[int, tuple], ...]
    normalized: bool = False
    is_s_unit_pair: bool = True

    def valuation_pair(self, p: int) -> tuple:
        for q, pair in self.valuations:
            if q == p:
                return pair
        raise PreconditionError(f"{p} is not one of the primes of this solution")

    @property
    def s_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.valuations)

    def sort_key(self) -> tuple:
        return (self.lam.sort_key(), self.mu.sort_key())


def make_solution(lam: FieldElement, s_primes: Sequence[int], normalized: bool = False) -> SUnitSolution:
    """由 λ 构造并认证一个解（μ = 1 - λ）。

    Raises:
        PreconditionError: λ 或 μ 不是 S-单位
    """
    mu = 1 - lam
    primes = tuple(sorted(s_primes))
    if not (is_s_unit(lam, primes) and is_s_unit(mu, primes)):
        raise PreconditionError(f"({lam}, {mu}) is not a pair of S-units for S = {list(primes)}")
    vals = tuple((p, (val_inert(lam, p), val_inert(mu, p))) for p in primes)
    return SUnitSolution(lam, mu, vals, normalized, True)


# =============================================================================
# 盒中 S-单位枚举
# =============================================================================

def _rational_box_units(H: int, primes: Sequence[int]) -> list[int]:
    values = {1}
    for p in primes:
        grown = set()
        for v in values:
            while v <= H:
                grown.add(v)
                v *= p
        values = grown
    return sorted(s * v for v in values for s in (1, -1))


def _box_chunk(args: tuple) -> list[tuple[int, ...]]:
    field, primes, H, lead = args
    m = field.degree
    rest = np.array(list(itertools.product(range(-H, H + 1), repeat=m - 1)), dtype=np.int64).reshape(-1, m - 1)
    points = np.hstack([np.full((rest.shape[0], 1), lead, dtype=np.int64), rest])
    approx = norms_float(field, points)
    found = []
    for row, value in zip(points, approx):
        if not row.any():
            continue
        coords = tuple(int(c) for c in row)
        if abs(value) > FLOAT_NORM_CEILING:
            candidate = True
        else:
            nearest = int(round(float(value)))
            candidate = nearest != 0 and is_smooth_rational(nearest, primes)
        if candidate and is_s_unit(field.element(coords), primes):
            found.append(coords)
    return found


def enumerate_box_sunits(cfg: SUnitConfig) -> list[FieldElement]:
    """返回坐标在 [-H, H]^m 中、范数为 ±Π p_i^e_i 的全部整元素（去重并按规范顺序）。

    盒按第一个坐标切片，可分给多个进程；合并后排序，结果与切分无关。

    Raises:
        PreconditionError: S 中的素数不惰性或带有指标警告
        DomainError: 盒太大（超过 config.BOX_SIZE_LIMIT）
    """
    cfg.validate()
    K, H, primes = cfg.field, cfg.height_bound, cfg.s_primes
    if K.degree == 1:
        return [K.scalar(v) for v in _rational_box_units(H, primes)]
    size = (2 * H + 1) ** K.degree
    if size > BOX_SIZE_LIMIT:
        raise DomainError(f"box of {size} points exceeds the limit {BOX_SIZE_LIMIT}")
    tasks = [(K, primes, H, lead) for lead in range(-H, H + 1)]
    logger.debug("scanning %d box points in %d slices", size, len(tasks))
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            slices = list(tqdm(pool.map(_box_chunk, tasks), total=len(tasks),
                               disable=not SHOW_PROGRESS, desc="box"))
    else:
        slices = [_box_chunk(t) for t in tqdm(tasks, disable=not SHOW_PROGRESS, desc="box")]
    units = {coords for chunk in slices for coords in chunk}
    return sorted((K.element(c) for c in units), key=lambda e: e.sort_key())


# =============================================================================
# 方程求解
# =============================================================================

def _rational_window_solutions(cfg: SUnitConfig) -> list[FieldElement]:
    K, E, primes = cfg.field, cfg.exponent_bound, cfg.s_primes
    lams = []
    for exps in itertools.product(range(-E, E + 1), repeat=len(primes)):
        value = Fraction(1)
        for p, e in zip(primes, exps):
            value *= Fraction(p) ** e
        for lam in (value, -value):
            mu = 1 - lam
            if mu == 0 or not is_smooth_rational(mu, primes):
                continue
            if all(abs(valuation(mu, p)) <= E for p in primes):
                lams.append(K.scalar(lam))
    return lams


def solve_sunit_equation(cfg: SUnitConfig) -> list[SUnitSolution]:
    """穷举 λ + μ = 1 的 S-单位解。

    盒扫描：λ = β/δ，μ = γ/δ，其中 β、γ、δ 都在盒中 S-单位集合里且 β + γ = δ。
    有理数域且给出 exponent_bound 时改用指数窗口快速路径。
    两种定向 (λ, μ) 与 (μ, λ) 都保留，按 (λ, μ) 的规范顺序排列。

    Returns:
        list[SUnitSolution]: 已认证的解（相对于 H 的下界）
    """
    cfg.validate()
    K, primes = cfg.field, cfg.s_primes
    if K.degree == 1 and cfg.exponent_bound is not None:
        lams = _rational_window_solutions(cfg)
    else:
        units = enumerate_box_sunits(cfg)
        index = {u.coeffs: u for u in units}
        lams = []
        for delta in units:
            inv = None
            for beta in units:
                gamma = delta - beta
                if gamma.coeffs in index:
                    if inv is None:
                        inv = delta.inverse()
                    lams.append(beta * inv)
    solutions: dict[tuple, SUnitSolution] = {}
    for lam in lams:
        if lam.coeffs in solutions:
            continue
        sol = make_solution(lam, primes)
        if sol.lam + sol.mu != K.one:
            raise InvariantViolation("solution does not sum to 1", (str(sol.lam), str(sol.mu)))
        solutions[lam.coeffs] = sol
    result = sorted(solutions.values(), key=lambda s: s.sort_key())
    logger.info("found %d solutions for S=%s within H=%d", len(result), list(primes), cfg.height_bound)
    return result


# =============================================================================
# 轨道、规范化与下降
# =============================================================================

def solution_orbit(lam: FieldElement) -> list[tuple[FieldElement, FieldElement]]:
    """λ 在 λ ↦ 1-λ、λ ↦ 1/λ 生成的群作用下的六元轨道，以 (x, 1-x) 对给出。"""
    one = lam.field.one
    mu = one - lam
    members = [lam, mu, lam.inverse(), mu.inverse(), (lam - one) / lam, lam / (lam - one)]
    return [(x, one - x) for x in members]


def normalize_solution(s: SUnitSolution, p: int) -> SUnitSolution:
    """在解的轨道中选出 v_p(λ') ≥ 0、v_p(μ') ≥ 0 且
    max(v_p(λ'), v_p(μ')) = max(|v_p(λ)|, |v_p(μ)|) 的成员。

    s 本身已满足时原样返回（标记为已规范化）；否则在满足条件的成员中
    取赋值对字典序最小者，再按规范元素顺序。

    Raises:
        PreconditionError: p 不在 S 中
        InvariantViolation: 轨道中找不到满足条件的成员
    """
    a, b = s.valuation_pair(p)
    target = max(abs(a), abs(b))
    if a >= 0 and b >= 0:
        return SUnitSolution(s.lam, s.mu, s.valuations, True, s.is_s_unit_pair)
    candidates = []
    for x, y in solution_orbit(s.lam):
        vx, vy = val_inert(x, p), val_inert(y, p)
        if vx >= 0 and vy >= 0 and max(vx, vy) == target:
            candidates.append(((vx, vy), x.sort_key(), y.sort_key(), x))
    if not candidates:
        raise InvariantViolation(f"no integral orbit member at {p}", (str(s.lam), str(s.mu)))
    candidates.sort(key=lambda t: t[:3])
    if s.is_s_unit_pair:
        return make_solution(candidates[0][3], s.s_primes, normalized=True)
    lam = candidates[0][3]
    vals = tuple((q, (val_inert(lam, q), val_inert(1 - lam, q))) for q in s.s_primes)
    return SUnitSolution(lam, 1 - lam, vals, True, False)


def descent_step(gamma: FieldElement, s_primes: Sequence[int] = (2,)) -> SUnitSolution:
    """下降映射 γ ↦ (λ″, μ″) = (-(1-γ)²/4γ, (1+γ)²/4γ)。

    λ″ + μ″ = 1 恒成立。若 2 ∈ S 且在域中惰性，同时核对
    v(λ″) = 2v(1-γ) - 2 - v(γ)、v(μ″) = 2v(1+γ) - 2 - v(γ)（v(γ) = 0 时即 2v(1±γ) - 2）。
    结果不是 S-单位对时照常返回，但 is_s_unit_pair 为 False。

    Raises:
        DomainError: γ ∈ {0, 1, -1}
        InvariantViolation: 恒等式或赋值公式不成立
    """
    K = gamma.field
    if gamma.is_zero() or gamma == K.one or gamma == -K.one:
        raise DomainError("gamma must not be 0, 1 or -1")
    four_gamma = 4 * gamma
    lam = -((1 - gamma) * (1 - gamma)) / four_gamma
    mu = ((1 + gamma) * (1 + gamma)) / four_gamma
    if lam + mu != K.one:
        raise InvariantViolation("descent pair does not sum to 1", (str(lam), str(mu)))
    primes = tuple(sorted(s_primes))
    certified = is_s_unit(lam, primes) and is_s_unit(mu, primes)
    vals = tuple((p, (val_inert(lam, p), val_inert(mu, p))) for p in primes)
    if 2 in primes:
        v_gamma = val_inert(gamma, 2)
        expected = (2 * val_inert(1 - gamma, 2) - 2 - v_gamma, 2 * val_inert(1 + gamma, 2) - 2 - v_gamma)
        if dict(vals)[2] != expected:
            raise InvariantViolation("descent valuation formula failed", (dict(vals)[2], expected))
    if not certified:
        logger.info("descent of %s is not an S-unit pair for S=%s", gamma, list(primes))
    return SUnitSolution(lam, mu, vals, False, certified)


# =============================================================================
# 赋值分类校验
# =============================================================================

@dataclass(frozen=True)
class ValuationCheck:
    """单个解的校验结果。"""

    lam: str
    mu: str
    pair: tuple
    passed: bool
    reason: str = ""


@dataclass(frozen=True)
class ValuationReport:
    """verify_valuation_classification 的结果。"""

    prime: int
    mode: str
    checks: tuple[ValuationCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[ValuationCheck]:
        return [c for c in self.checks if not c.passed]


def verify_valuation_classification(solutions: Sequence[SUnitSolution], p: int,
                                    mode: VerifyMode) -> ValuationReport:
    """逐个检查解在 p 处的赋值对。

    lemma32 模式要求 (v(λ), v(μ)) ∈ {(1,0), (0,1), (-1,-1)}；
    prop_bound 模式要求 max{|v(λ)|, |v(μ)|} ≤ 4。未通过 S-单位认证的解直接判为失败。
    """
    if mode not in ("lemma32", "prop_bound"):
        raise DomainError(f"unknown verification mode {mode!r}")
    checks = []
    for s in solutions:
        pair = s.valuation_pair(p)
        if not s.is_s_unit_pair:
            checks.append(ValuationCheck(str(s.lam), str(s.mu), pair, False, "not an S-unit pair"))
            continue
        if mode == "lemma32":
            ok = pair in LEMMA_VALUATION_SET
        else:
            ok = INFINITY not in pair and max(abs(pair[0]), abs(pair[1])) <= VALUATION_BOUND
        checks.append(ValuationCheck(str(s.lam), str(s.mu), pair, ok, "" if ok else f"pair {pair}"))
    return ValuationReport(p, mode, tuple(checks))


# =============================================================================
# 报告序列化
# =============================================================================

def _elem_to_json(a: FieldElement) -> list[str]:
    return [str(c) for c in a.coeffs]


def report_to_json(cfg: SUnitConfig, solutions: Sequence[SUnitSolution]) -> str:
    """把解集连同配置回显写成键顺序稳定的 JSON 文本。"""
    doc = {
        "config": cfg.echo(),
        "completeness": f"lower bound: no further solution within the search bound "
                        f"(H={cfg.height_bound}, exponent window={cfg.exponent_bound})",
        "count": len(solutions),
        "solutions": [
            {
                "lambda": _elem_to_json(s.lam),
                "mu": _elem_to_json(s.mu),
                "valuations": {str(p): list(pair) for p, pair in s.valuations},
                "normalized": s.normalized,
            }
            for s in solutions
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def report_from_json(text: str) -> tuple[dict, list[SUnitSolution]]:
    """读回 report_to_json 的输出，重新认证每个解。"""
    doc = json.loads(text)
    cfg = doc["config"]
    K = make_field(cfg["field"])
    primes = tuple(cfg["s_primes"])
    sols = []
    for entry in doc["solutions"]:
        lam = K.element([Fraction(c) for c in entry["lambda"]])
        sols.append(make_solution(lam, primes, normalized=entry["normalized"]))
    return cfg, sols
