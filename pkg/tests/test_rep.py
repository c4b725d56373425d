"""Truncated module machinery: weights, HWVs, classification, claims."""

from fractions import Fraction

import pytest

from dottedtl.rep import (
    ClaimPart,
    DecompositionClaim,
    ModuleTwist,
    RepError,
    TruncatedModule,
    bracket_check,
    ef_string_check,
    verify_claim,
    zuckerman,
)
from dottedtl.ring import E_RING
from dottedtl.sl2 import BASE_SPEC


def _poly_module(depth, twist=None):
    keys = [
        (a, b)
        for a in range(depth // 2 + 1)
        for b in range(depth // 4 + 1)
        if 2 * a + 4 * b <= depth
    ]
    return TruncatedModule(
        E_RING, BASE_SPEC, keys,
        degree_fn=lambda k: 2 * k[0] + 4 * k[1],
        depth=depth, twist=twist, name="test",
    )


def test_weights_match_degrees():
    m = _poly_module(12)
    for (a, b) in m.basis:
        assert m.weights[(a, b)] == -(2 * a + 4 * b)


def test_boundary_loss_is_tracked():
    m = _poly_module(8)
    assert (4, 0) in m.boundary_loss["f"]  # f(E1^4) has degree 10 terms
    assert m.lossy("f", {(4, 0): Fraction(1)})
    assert not m.lossy("f", {(0, 0): Fraction(1)})


def test_constant_is_hwv():
    m = _poly_module(12)
    vs = m.highest_weight_vectors(0)
    assert len(vs) == 1 and set(vs[0]) == {(0, 0)}


def test_classify_constant_is_finite():
    m = _poly_module(12)
    assert m.classify_cyclic({(0, 0): Fraction(1)}, 0) == "L"


def test_classify_discriminant_is_verma():
    m = _poly_module(12)
    # 4E2 - E1^2, the weight -4 HWV
    v = {(0, 1): Fraction(4), (2, 0): Fraction(-1)}
    assert m.classify_cyclic(v, -4) == "M"


def test_classify_requires_hwv():
    m = _poly_module(12)
    with pytest.raises(RepError):
        m.classify_cyclic({(0, 1): Fraction(1)}, -4)


def test_shallow_truncation_is_reported():
    # twisted so the f-string of the generator is infinite, weight 6:
    # deciding f^7 = 0 needs depth 14, not 4
    m = _poly_module(4, twist=ModuleTwist(Fraction(1), 6))
    with pytest.raises(RepError, match="too shallow"):
        m.classify_cyclic({(0, 0): Fraction(1)}, 6)


def test_bracket_and_ef_string():
    m = _poly_module(12)
    assert bracket_check(m)
    assert ef_string_check(m, {(0, 0): Fraction(1)}, 0)


def test_twist_changes_weights():
    m = _poly_module(8, twist=ModuleTwist(Fraction(1), -2))
    assert m.weights[(0, 0)] == -2
    fv = m.apply("f", {(0, 0): Fraction(1)})
    assert fv == {(1, 0): Fraction(1)}  # f(1) = a*E1


def test_claim_characters():
    claim = DecompositionClaim([ClaimPart("L", 2), ClaimPart("M", -4)])
    ch = claim.character(-6, 4)
    assert ch == {2: 1, 0: 1, -2: 1, -4: 1, -6: 1}
    dual = DecompositionClaim([ClaimPart("Mdual", 0)])
    assert dual.character(-4, 2) == {0: 1, -2: 1, -4: 1}


def test_verify_claim_catches_wrong_character():
    m = _poly_module(8)
    bad = DecompositionClaim([ClaimPart("L", 0,
                                        generator={(0, 0): Fraction(1)})])
    rep = verify_claim(m, bad)
    assert not rep["ok"]
    assert any(c["check"] == "character" and c["status"] == "fail"
               for c in rep["checks"])


def test_zuckerman_on_polynomials():
    m = _poly_module(12)
    z = zuckerman(m)
    assert z["summands"] == [{"kind": "L", "lambda": 0}]
    assert z["dimension"] == 1
    assert "depth" in z["caveat"] or "depth" in str(z)
