#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""定理假设检验引擎测试。"""

import json
import logging
from dataclasses import replace

import pytest

from errors import DomainError, InvariantViolation, MissingInputError, PreconditionError, WrongTheoremError
from hypothesis_engine import (
    EFFECTIVITY_Q_LAYERS, H_PLUS_NOTE, INTEGER_COEFFS_NOTE, NOT_APPLICABLE, THEOREM_CHECKS,
    Check, CoeffDescriptor, HPlusDeclaration, Scenario, build_certificate, certificate_from_json,
    certificate_to_json, check_proposition_bound, check_sunit_lemma, check_theorem_aflt_layers,
    check_theorem_gfe_K_2d, check_theorem_gfe_layers, check_theorem_gfe_Q_layers_2d,
    check_unit_equation_theorem, derived_inertness_in_layer, has_square_root_mod_32,
    odd_squares_mod32, parse_descriptor, parse_h_plus, search_valid_d
)
from numberfield import make_field

ODD = HPlusDeclaration("odd", "table")
GOLDEN_ABC = (CoeffDescriptor(1, 0, 0), CoeffDescriptor(-1, 1, 1), CoeffDescriptor(1, 4, 2))


def _coeffs(*values):
    """由 2 的幂值构造 u = 1、s = 0 的描述符，例如 (1, 2, 4)。"""
    return tuple(CoeffDescriptor(1, v.bit_length() - 1, 0) for v in values)


def _verdicts(cert):
    return {c.label: c.verdict for c in cert.checks}


def _golden(**changes):
    base = dict(l=7, n=1, d=5, coeffs_ABC=GOLDEN_ABC, h_plus=ODD)
    base.update(changes)
    return Scenario(**base)


# =============================================================================
# 输入解析
# =============================================================================

def test_descriptor_parsing():
    assert parse_descriptor("-1,2,1") == CoeffDescriptor(-1, 2, 1)
    assert str(CoeffDescriptor(1, 4, 2)) == "1,4,2"
    assert CoeffDescriptor(-1, 1, 1).value(5) == -10
    assert CoeffDescriptor(1, 4, 2).value(5) == 400
    for bad in ("1,2", "a,b,c", "2,0,0", "1,-1,0"):
        with pytest.raises(DomainError):
            parse_descriptor(bad)
    with pytest.raises(MissingInputError):
        CoeffDescriptor(1, 0, 1).value(None)


def test_h_plus_parsing():
    assert parse_h_plus("odd:LMFDB") == HPlusDeclaration("odd", "LMFDB")
    for bad in ("odd", "maybe:x", "odd:"):
        with pytest.raises(DomainError):
            parse_h_plus(bad)


def test_scenario_validation():
    for kwargs in ({"l": 4}, {"d": 2}, {"d": 9}, {"n": 0}):
        with pytest.raises(DomainError):
            Scenario(**kwargs)
    sc = Scenario(l=5, n=1)
    assert sc.m == 1
    assert list(sc.echo()) == ["field", "field_polynomial", "degree", "l", "n", "d", "coeffs_ABC", "h_plus"]


def test_scenario_field_built_once(cubic):
    sc = Scenario(l=5, n=1)
    assert sc.field is sc.field
    assert sc.field.degree == 1
    assert Scenario(cubic, l=5).field is cubic
    assert replace(sc, l=7).field.degree == 1


# =============================================================================
# 层上的渐近费马
# =============================================================================

def test_aflt_cubic_l5_not_applicable(cubic):
    cert = check_theorem_aflt_layers(Scenario(cubic, l=5, n=1))
    assert cert.conclusion == NOT_APPLICABLE
    assert cert.failed_labels == ["5 totally ramified in K"]


def test_aflt_cubic_l7_gcd_fails(cubic):
    cert = check_theorem_aflt_layers(Scenario(cubic, l=7, n=1))
    assert cert.conclusion == NOT_APPLICABLE
    assert cert.failed_labels == ["gcd((l-1)/2, [K:Q]) = 1"]
    assert _verdicts(cert)["7 totally ramified in K"]


def test_aflt_rationals_asserted():
    cert = check_theorem_aflt_layers(Scenario(l=5, n=1))
    assert cert.all_passed
    assert "K_{1,5}" in cert.conclusion
    labels = [c.label for c in cert.checks]
    assert labels[0] == "[K:Q] odd"
    assert labels[-1] == "K totally real"
    assert labels.index("2^(l-1) != 1 mod l^2") < labels.index("5 totally ramified in K")


def test_aflt_wieferich_l_blocks():
    cert = check_theorem_aflt_layers(Scenario(l=1093, n=1))
    assert cert.failed_labels == ["2^(l-1) != 1 mod l^2"]


def test_aflt_requires_layer_index():
    with pytest.raises(MissingInputError):
        check_theorem_aflt_layers(Scenario(l=5))


# =============================================================================
# 系数为 2 的幂的广义费马方程
# =============================================================================

@pytest.mark.parametrize("values,asserted", [((1, 2, 4), True), ((1, 2, 2), True), ((2, 2, 4), False)])
def test_gfe_layers_examples(values, asserted):
    cert = check_theorem_gfe_layers(Scenario(l=5, n=1, coeffs_ABC=_coeffs(*values)))
    assert cert.all_passed is asserted
    assert INTEGER_COEFFS_NOTE in cert.notes
    if not asserted:
        assert cert.failed_labels == ["v_P(ABC) = 0 or 2 mod 3"]


def test_gfe_layers_valuation_bound():
    cert = check_theorem_gfe_layers(Scenario(l=5, n=1, coeffs_ABC=_coeffs(1, 8, 4)))
    assert "max{v_P(A), v_P(BC)} <= 4" in cert.failed_labels


def test_gfe_layers_sign_sums():
    cert = check_theorem_gfe_layers(Scenario(l=5, n=1, coeffs_ABC=_coeffs(2, 1, 1)))
    assert "A +- B +- C != 0" in cert.failed_labels


def test_gfe_layers_rejects_d_coefficients():
    with pytest.raises(WrongTheoremError):
        check_theorem_gfe_layers(Scenario(l=5, n=1, d=5, coeffs_ABC=GOLDEN_ABC))


def test_gfe_layers_with_unit_coefficients_matches_aflt(cubic):
    for sc in (Scenario(cubic, l=7, n=1), Scenario(l=5, n=2), Scenario(cubic, l=5, n=1)):
        aflt = check_theorem_aflt_layers(sc)
        gfe = check_theorem_gfe_layers(replace(sc, coeffs_ABC=_coeffs(1, 1, 1)))
        assert gfe.checks[:len(aflt.checks)] == aflt.checks
        assert gfe.all_passed == aflt.all_passed


# =============================================================================
# 系数含 d 的两种情形
# =============================================================================

def test_gfe_K_2d_cubic(cubic):
    cert = check_theorem_gfe_K_2d(Scenario(cubic, d=5, coeffs_ABC=GOLDEN_ABC, h_plus=ODD))
    assert cert.all_passed
    assert H_PLUS_NOTE in cert.notes
    h_check = cert.checks[0]
    assert h_check.caveat and not h_check.fatal


def test_gfe_K_2d_not_applicable(cubic):
    cert = check_theorem_gfe_K_2d(Scenario(cubic, d=41, coeffs_ABC=GOLDEN_ABC, h_plus=ODD))
    assert set(cert.failed_labels) == {"41 inert in K", "d^[K:Q] not in {1,9,17,25} mod 32"}
    cert = check_theorem_gfe_K_2d(Scenario(cubic, d=3, coeffs_ABC=GOLDEN_ABC, h_plus=ODD))
    assert cert.failed_labels == ["d = 1 mod 4"]


def test_gfe_K_2d_requires_h_plus(cubic):
    with pytest.raises(MissingInputError):
        check_theorem_gfe_K_2d(Scenario(cubic, d=5, coeffs_ABC=GOLDEN_ABC))


def test_gfe_Q_layers_2d_golden(caplog):
    with caplog.at_level(logging.WARNING):
        cert = check_theorem_gfe_Q_layers_2d(_golden())
    assert "using declared h+ parity odd" in caplog.text
    assert cert.all_passed
    assert cert.effectivity_note == EFFECTIVITY_Q_LAYERS
    text = certificate_to_json(cert)
    assert text == certificate_to_json(check_theorem_gfe_Q_layers_2d(_golden()))
    doc = json.loads(text)
    assert list(doc) == ["scenario", "theorem_id", "checks", "conclusion", "effectivity_note", "notes"]
    assert doc["theorem_id"] == "T_GFE_Q_layers_2d"
    assert [c["label"] for c in doc["checks"]] == [
        "d != l", "l >= 5 prime", "2^(l-1) != 1 mod l^2", "d = 1 mod 4",
        "5^(l-1) != 1 mod l^2", "d not in {1,9,17,25} mod 32", "h+ of Q_{1,7} odd (declared)",
    ]
    evidence = {c["label"]: c["evidence"] for c in doc["checks"]}
    assert evidence["2^(l-1) != 1 mod l^2"] == "2^6 = 15 mod 49"
    assert evidence["5^(l-1) != 1 mod l^2"] == "5^6 = 43 mod 49"
    assert evidence["d not in {1,9,17,25} mod 32"] == "5 = 5 mod 32"
    assert "1x^p + -10y^p + 400z^p = 0" in doc["conclusion"]


@pytest.mark.parametrize("changes,flipped", [
    ({"d": 3}, ["d = 1 mod 4"]),
    ({"d": 17}, ["d not in {1,9,17,25} mod 32"]),
    ({"d": 197}, ["197^(l-1) != 1 mod l^2"]),
    ({"h_plus": HPlusDeclaration("even", "table")}, ["h+ of Q_{1,7} odd (declared)"]),
    ({"l": 3}, ["l >= 5 prime"]),
    ({"l": 1093}, ["2^(l-1) != 1 mod l^2"]),
])
def test_gfe_Q_layers_2d_single_mutations(changes, flipped):
    cert = check_theorem_gfe_Q_layers_2d(_golden(**changes))
    assert cert.conclusion == NOT_APPLICABLE
    assert cert.failed_labels == flipped


def test_gfe_Q_layers_2d_d_equals_l():
    cert = check_theorem_gfe_Q_layers_2d(_golden(d=7))
    assert "d != l" in cert.failed_labels
    assert "7^(l-1) != 1 mod l^2" in cert.failed_labels


def test_gfe_Q_layers_2d_wieferich_l_flips_verdict():
    """l = 1093 是以 2 为底的 Wieferich 素数，结论由成立翻转为不适用"""
    assert check_theorem_gfe_Q_layers_2d(_golden()).all_passed
    cert = check_theorem_gfe_Q_layers_2d(_golden(l=1093))
    assert not cert.all_passed
    assert cert.conclusion == NOT_APPLICABLE
    failed = [c for c in cert.checks if not c.verdict]
    assert [c.label for c in failed] == ["2^(l-1) != 1 mod l^2"]
    assert failed[0].evidence == f"2^1092 = 1 mod {1093 ** 2}"


def test_every_single_verdict_flip_blocks_conclusion():
    cert = check_theorem_gfe_Q_layers_2d(_golden())
    for i, check in enumerate(cert.checks):
        checks = list(cert.checks)
        checks[i] = replace(check, verdict=False)
        flipped = build_certificate(cert.theorem_id, cert.scenario, checks, cert.conclusion, cert.effectivity_note)
        assert flipped.conclusion == NOT_APPLICABLE
        fatal = list(cert.checks)
        fatal[i] = replace(check, caveat=True, fatal=True)
        assert build_certificate(cert.theorem_id, cert.scenario, fatal, "ok", "").conclusion == NOT_APPLICABLE
        soft = list(cert.checks)
        soft[i] = replace(check, caveat=True, fatal=False)
        assert build_certificate(cert.theorem_id, cert.scenario, soft, "ok", "").conclusion == "ok"


# =============================================================================
# 单位方程、赋值引理与上界命题
# =============================================================================

def test_unit_equation_theorem(cubic):
    assert check_unit_equation_theorem(Scenario(l=5)).all_passed
    assert check_unit_equation_theorem(Scenario(make_field([-2, 0, 1]), l=2)).all_passed
    # θ + (1 - θ) = 1 是 Q(ζ₇)⁺ 中的单位解，定理必须不适用
    assert not check_unit_equation_theorem(Scenario(cubic, l=7)).all_passed
    assert not check_unit_equation_theorem(Scenario(l=3)).all_passed
    assert check_unit_equation_theorem(Scenario(cubic, l=5)).failed_labels == ["5 totally ramified in F"]


def test_sunit_lemma_checklist(cubic):
    cert = check_sunit_lemma(Scenario(l=5, n=1))
    assert cert.all_passed
    assert cert.checks[-1].label == "2 inert in K_{1,5}"
    cert = check_sunit_lemma(Scenario(cubic, l=7, n=1))
    assert "gcd((l-1)/2, [K:Q]) = 1" in cert.failed_labels


def test_derived_inertness(cubic):
    assert derived_inertness_in_layer(make_field([0, 1]), 2, 5)
    assert not derived_inertness_in_layer(make_field([0, 1]), 2, 1093)
    with pytest.raises(DomainError):
        derived_inertness_in_layer(cubic, 2, 3)


def test_square_root_mod_32(cubic, rationals):
    assert has_square_root_mod_32(rationals, 5) is False
    assert has_square_root_mod_32(rationals, 17) is True
    assert has_square_root_mod_32(cubic, 5) is False
    assert has_square_root_mod_32(cubic, 17) is True
    with pytest.raises(PreconditionError):
        has_square_root_mod_32(make_field([-2, 0, 1]), 5)


def test_proposition_bound(cubic):
    assert check_proposition_bound(Scenario(d=5, h_plus=ODD)).all_passed
    assert check_proposition_bound(Scenario(cubic, d=5, h_plus=ODD)).all_passed
    cert = check_proposition_bound(Scenario(d=17, h_plus=ODD))
    assert cert.failed_labels == ["d = v^2 mod P^5 has no solution"]
    with pytest.raises(MissingInputError):
        check_proposition_bound(Scenario(d=5))


def test_theorem_registry_covers_cli_names():
    assert set(THEOREM_CHECKS) == {"aflt-layers", "gfe-layers", "gfe-K-2d", "gfe-Q-2d",
                                   "unit-equation", "prop-bound", "lemma-valuations"}


# =============================================================================
# 同余过滤
# =============================================================================

def test_odd_squares_mod32():
    assert odd_squares_mod32() == {1, 9, 17, 25}


def test_search_valid_d():
    assert search_valid_d(7, 30) == [5, 13, 29]
    assert search_valid_d(7, 4) == []
    assert search_valid_d(5, 20) == [13]
    assert search_valid_d(7, 2000, workers=2) == search_valid_d(7, 2000, workers=1)


def test_search_valid_d_agrees_with_certificate():
    for d in search_valid_d(7, 200):
        assert check_theorem_gfe_Q_layers_2d(_golden(d=d)).all_passed


def test_search_valid_d_errors():
    with pytest.raises(DomainError):
        search_valid_d(3, 100)
    with pytest.raises(PreconditionError):
        search_valid_d(1093, 100)


# =============================================================================
# 证书序列化
# =============================================================================

def test_certificate_roundtrip():
    cert = check_theorem_gfe_Q_layers_2d(_golden())
    again = certificate_from_json(certificate_to_json(cert))
    assert again == cert


def test_certificate_contradiction_detected():
    doc = json.loads(certificate_to_json(check_theorem_gfe_Q_layers_2d(_golden(d=3))))
    doc["conclusion"] = "asserted anyway"
    with pytest.raises(InvariantViolation):
        certificate_from_json(json.dumps(doc))


def test_check_is_plain_data():
    c = Check("x", True, "e")
    assert (c.caveat, c.fatal) == (False, False)
