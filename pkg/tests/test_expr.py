"""Expression DSL: parsing, printing, macros, normalization."""

import random
from fractions import Fraction

import pytest

from dottedtl import projectors
from dottedtl.expr import (
    ExprError,
    normalize,
    normalize_combo,
    normalized_string,
    parse_expr,
    print_combo,
    roundtrip_equal,
)
from dottedtl.ring import E_RING
from dottedtl.words import Combo, DtlParams, random_word


def _same(a: Combo, b: Combo) -> bool:
    return (a - b).evaluate().is_zero()


def test_basic_parses():
    assert parse_expr("cap ; cup").evaluate().n_in == 2
    circle = parse_expr("cup ; cap")
    assert circle.evaluate() == parse_expr("2").evaluate()
    assert _same(parse_expr("(id|id) - 1/2*(cap ; cup)"), parse_expr("jw(2)"))


def test_dot_relation():
    assert _same(parse_expr("dot ; dot"), parse_expr("E1*dot - E2*id"))


def test_precedence_and_unary_minus():
    assert _same(parse_expr("-dot + dot"), Combo(n_in=1, n_out=1))
    assert _same(parse_expr("2*3*id"), parse_expr("6*id"))
    assert _same(parse_expr("E1^2*id - E1*E1*id"), Combo(n_in=1, n_out=1))
    assert _same(parse_expr("dot / 2"), parse_expr("1/2 * dot"))


def test_crossing_involution():
    assert _same(parse_expr("s(1,2) ; s(1,2)"), parse_expr("id|id"))


def test_macros_match_projector_module():
    p0 = DtlParams(Fraction(0), Fraction(0))
    assert parse_expr("jw(3)").evaluate() == projectors.jw(3)
    assert parse_expr("z(3)").evaluate() == projectors.zn(3).evaluate()
    assert parse_expr("u(2)").evaluate() == projectors.un(2, p0).mat
    assert parse_expr("d(3)").evaluate() == projectors.dn(3, p0).mat


def test_error_positions():
    with pytest.raises(ExprError) as exc:
        parse_expr("dot ;; id")
    assert exc.value.pos == 5
    with pytest.raises(ExprError):
        parse_expr("cap | ")
    with pytest.raises(ExprError):
        parse_expr("jw(99)")
    with pytest.raises(ExprError):
        parse_expr("dot / 0")
    with pytest.raises(ExprError):
        parse_expr("dot * cap")
    with pytest.raises(ExprError):
        parse_expr("cup ; cup")


def test_shape_mismatch_in_sum():
    with pytest.raises(ExprError):
        parse_expr("dot + cap")


def test_normalize_examples():
    assert normalized_string(parse_expr("dot ; dot")) \
        == "(E1)*(dot) + (-E2)*(id)"
    terms = normalize(parse_expr("dot ; dot"))
    assert len(terms) == 2
    assert normalized_string(parse_expr("cup ; cap")) == "(2)"


def test_normalize_preserves_evaluation():
    rng = random.Random(21)
    for _ in range(30):
        c = Combo.of(random_word(rng, max_strands=3))
        assert _same(normalize_combo(c), c)


def test_normalize_scalars():
    c = parse_expr("E1*E2 - 3")
    got = print_combo(normalize_combo(c))
    assert got == "(-3 + E1*E2)"


def test_roundtrips_seeded():
    rng = random.Random(22)
    assert all(
        roundtrip_equal(Combo.of(random_word(rng))) for _ in range(200)
    )


def test_print_parse_agreement():
    for text in ["jw(2)", "z(2)", "dot|cup", "cap ; cup ; dot|id"]:
        c = parse_expr(text)
        assert _same(parse_expr(print_combo(c)), c)
