#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""有限域多项式模块测试。"""

import itertools
import random

import pytest
import sympy
from sympy import GF, Poly

from errors import DomainError, FieldMismatchError
from polyfp import PolyFp, factor_fp, is_irreducible_fp, poly_arith

X = sympy.Symbol("x")


def P(p, coeffs):
    return PolyFp.from_ints(p, coeffs)


def _sympy_factors(f: PolyFp) -> list[tuple[tuple[int, ...], int]]:
    """sympy 给出的首一因子（系数约化到 [0, p)，常数项在前）。"""
    p = f.p
    _, factors = Poly(list(reversed(f.coeffs)), X, domain=GF(p)).factor_list()
    out = []
    for g, e in factors:
        coeffs = [int(c) % p for c in reversed(g.all_coeffs())]
        inv = pow(coeffs[-1], -1, p)
        out.append((tuple(c * inv % p for c in coeffs), e))
    return sorted(out, key=lambda t: (len(t[0]), t[0]))


def test_from_ints_reduces_and_trims():
    f = P(5, [6, -1, 0, 10])
    assert f.coeffs == (1, 4)
    assert f.degree == 1
    assert P(3, [0, 0]).is_zero
    assert P(3, []).degree == -1


def test_poly_arith_examples():
    """测试基本运算的例子"""
    assert poly_arith(P(5, [-1, 0, 1]), P(5, [-1, 1]), "gcd") == P(5, [4, 1])
    assert poly_arith(P(2, [0, 0, 0, 1]), P(2, [0, 1]), "divmod") == (P(2, [0, 0, 1]), P(2, []))
    assert poly_arith(P(2, [1, 1]), P(2, [1, 1]), "mul") == P(2, [1, 0, 1])
    assert poly_arith(P(7, [1, 2]), P(7, [6, 5]), "add") == P(7, [0, 0])
    assert poly_arith(P(7, [1, 2]), P(7, [1, 2]), "sub").is_zero


def test_poly_arith_errors():
    with pytest.raises(FieldMismatchError):
        poly_arith(P(5, [1, 1]), P(7, [1, 1]), "add")
    with pytest.raises(DomainError):
        poly_arith(P(5, [1, 1]), P(5, []), "divmod")
    with pytest.raises(DomainError):
        poly_arith(P(5, [1, 1]), P(5, [1]), "pow")


def test_gcd_is_monic():
    g = P(7, [3, 3]).gcd(P(7, [0, 6, 6]))
    assert g == P(7, [1, 1])
    assert g.is_monic


def test_factor_examples():
    fac = factor_fp(P(2, [1, 0, 1, 1]))
    assert fac.pattern() == [(3, 1)]
    assert is_irreducible_fp(P(2, [1, 0, 1, 1]))

    fac = factor_fp(P(7, [1, 5, 6, 1]))
    assert fac.factors == ((P(7, [2, 1]), 3),)

    fac = factor_fp(P(5, [-1, 0, 1]))
    assert [g for g, _ in fac.factors] == [P(5, [1, 1]), P(5, [4, 1])]


def test_factor_zero_polynomial_raises():
    with pytest.raises(DomainError):
        factor_fp(P(3, [0]))


def test_factor_keeps_unit_and_constants():
    fac = factor_fp(P(5, [2, 0, 3]))     # 3x² + 2 = 3(x² + 4) = 3(x+1)(x+4)
    assert fac.unit == 3
    assert fac.expand() == P(5, [2, 0, 3])
    assert factor_fp(P(5, [4])).factors == ()


def test_inseparable_polynomial():
    """p 次幂多项式走 p 次根分支"""
    f = P(3, [1, 0, 0, 1]) * P(3, [2, 1]) ** 2      # (x+1)³ (x+2)²
    fac = factor_fp(f)
    assert fac.factors == ((P(3, [1, 1]), 3), (P(3, [2, 1]), 2))


def test_factorization_matches_sympy_on_random_polynomials():
    """随机多项式：乘回去等于输入、次数守恒、与 sympy 一致"""
    rng = random.Random(11)
    for _ in range(150):
        p = rng.choice([2, 3, 5, 7, 11, 13])
        deg = rng.randint(1, 8)
        coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
        f = P(p, coeffs)
        fac = factor_fp(f)
        assert fac.expand() == f
        assert sum(g.degree * e for g, e in fac.factors) == f.degree
        assert all(is_irreducible_fp(g) for g, _ in fac.factors)
        ours = [(g.coeffs, e) for g, e in fac.factors]
        assert ours == _sympy_factors(f)


def test_factorization_is_seed_independent():
    f = P(13, [3, 0, 5, 1, 0, 2, 7, 1])
    assert factor_fp(f, seed=1) == factor_fp(f, seed=2)


@pytest.mark.parametrize("p,counts", [(2, [2, 1, 2, 3, 6]), (3, [3, 3, 8, 18])])
def test_irreducible_counts(p, counts):
    """首一不可约多项式个数符合 (1/d) Σ μ(d/k) p^k"""
    for d, expected in enumerate(counts, start=1):
        found = sum(1 for tail in itertools.product(range(p), repeat=d)
                    if is_irreducible_fp(P(p, list(tail) + [1])))
        assert found == expected


def test_factorization_restores_sympy_random_state():
    """分解使用固定种子，但不改变 sympy 全局随机源的状态"""
    from sympy.core import random as sympy_random
    before = sympy_random.rng.getstate()
    factor_fp(P(13, [3, 0, 5, 1, 0, 2, 7, 1]), seed=5)
    assert sympy_random.rng.getstate() == before


def test_equal_degree_split_over_f2():
    """p = 2 时的等次数分解：x^15 - 1 = 一次 · 二次 · 三个四次因子"""
    fac = factor_fp(P(2, [1] + [0] * 14 + [1]))
    assert fac.pattern() == [(1, 1), (2, 1), (4, 1), (4, 1), (4, 1)]
