#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""分圆层构造模块测试。"""

import pytest
import sympy

from cyclotomic_layers import (
    build_compositum, build_layer, inert_in_layer, layer_field, layer_to_field_spec,
    period_numeric_check
)
from errors import DomainError
from numberfield import is_totally_real, make_field, parse_field_spec, split_prime


def test_layer_three_is_real_cyclotomic_of_nine():
    """Q_{1,3} = Q(ζ₉)⁺，极小多项式 x³ - 3x + 1"""
    layer = build_layer(3, 1)
    assert layer.minpoly == (1, -3, 0, 1)
    assert layer.subgroup == (1, 8)
    assert layer.coset_reps == (1, 4, 7)
    assert layer.disc == 81


@pytest.mark.parametrize("l", [3, 5, 7, 11, 13])
def test_layer_integrity(l):
    """首一整系数、次数为 l、判别式为 l 的幂、数值周期是根"""
    layer = build_layer(l, 1)
    assert layer.degree == l
    assert layer.minpoly[-1] == 1
    assert all(isinstance(c, int) for c in layer.minpoly)
    assert layer.disc_is_power_of_l()
    assert layer.caveat_primes == ()
    assert period_numeric_check(layer)


def test_layer_is_totally_real_and_ramified_at_l():
    for l in (5, 7):
        K = layer_field(build_layer(l, 1))
        assert is_totally_real(K)
        assert split_prime(K, l).pattern == ((1, l),)


def test_build_layer_errors():
    with pytest.raises(DomainError):
        build_layer(4, 1)
    with pytest.raises(DomainError):
        build_layer(2, 1)
    with pytest.raises(DomainError):
        build_layer(3, 0)
    with pytest.raises(DomainError):
        build_layer(7, 2)
    assert build_layer(3, 2, degree_cap=9).degree == 9


@pytest.mark.slow
def test_layer_five_two_has_degree_25():
    layer = build_layer(5, 2)
    assert layer.degree == 25
    assert layer.disc_is_power_of_l()


def test_layer_field_spec_roundtrip():
    layer = build_layer(5, 1)
    coeffs, meta = parse_field_spec(layer_to_field_spec(layer))
    assert tuple(coeffs) == layer.minpoly
    assert meta["l"] == "5"
    assert meta["n"] == "1"
    assert meta["H"] == " ".join(map(str, layer.subgroup))


def test_inert_in_layer_examples():
    assert inert_in_layer(2, 5)
    assert not inert_in_layer(3, 11)
    assert not inert_in_layer(2, 1093)
    with pytest.raises(DomainError):
        inert_in_layer(5, 5)
    with pytest.raises(DomainError):
        inert_in_layer(4, 5)


@pytest.mark.parametrize("l", [5, 7, 11, 13])
def test_inertness_criterion_matches_splitting(l):
    """p ≤ 50 在 Q_{1,l} 中惰性当且仅当 p^(l-1) ≢ 1 (mod l²)"""
    K = layer_field(build_layer(l, 1))
    checked = 0
    for p in sympy.primerange(2, 51):
        if p == l:
            continue
        report = split_prime(K, p)
        if report.index_caveat:
            continue
        assert report.is_inert == inert_in_layer(p, l), p
        checked += 1
    assert checked > 0


def test_compositum_with_rationals_is_the_layer(rationals):
    layer = build_layer(5, 1)
    assert build_compositum(rationals, layer).f == layer.minpoly


def test_compositum_quadratic_with_layer_three():
    F = build_compositum(make_field([-2, 0, 1]), build_layer(3, 1))
    assert F.degree == 6
    assert make_field(F.f).degree == 6
    assert is_totally_real(F)


def test_compositum_cubic_with_layer_five(cubic):
    F = build_compositum(cubic, build_layer(5, 1))
    assert F.degree == 15
    assert F.f[-1] == 1
    assert is_totally_real(F)


def test_compositum_errors(cubic):
    with pytest.raises(DomainError):
        build_compositum(cubic, build_layer(3, 1))
    with pytest.raises(DomainError):
        build_compositum(cubic, build_layer(5, 1), degree_cap=10)
