"""Derivation specs for the base and Laurent rings."""

import random
from fractions import Fraction

from dottedtl.ring import E_RING, LASAGNA_RING
from dottedtl.sl2 import (
    BASE_SPEC,
    LASAGNA_SPEC,
    TwistData,
    check_bracket,
    check_flat_twist,
    iterate_f,
)


def _random_monomials(spec, rng, count=100):
    out = []
    for _ in range(count):
        powers = {}
        for n in spec.ring.names:
            lo = -2 if n == "A0" else 0  # A0 is invertible in the Laurent ring
            p = rng.randint(lo, 3)
            if p:
                powers[n] = p
        out.append(spec.ring.monomial(Fraction(rng.randint(-5, 5) or 1),
                                      **powers))
    return out


def test_base_spec_brackets_on_generators():
    gens = [E_RING.gen(n) for n in E_RING.names]
    assert check_bracket(BASE_SPEC, gens) == []


def test_lasagna_spec_brackets_on_generators():
    gens = [LASAGNA_RING.gen(n) for n in LASAGNA_RING.names]
    assert check_bracket(LASAGNA_SPEC, gens) == []


def test_brackets_on_random_monomials():
    rng = random.Random(7)
    assert check_bracket(BASE_SPEC, _random_monomials(BASE_SPEC, rng)) == []
    rng = random.Random(8)
    assert check_bracket(
        LASAGNA_SPEC, _random_monomials(LASAGNA_SPEC, rng)) == []


def test_base_images():
    E1, E2 = E_RING.gen("E1"), E_RING.gen("E2")
    assert BASE_SPEC.apply("e", E1) == E_RING.const(-2)
    assert BASE_SPEC.apply("e", E2) == -E1
    assert BASE_SPEC.apply("f", E1) == E1 * E1 - 2 * E2
    assert BASE_SPEC.apply("f", E2) == E1 * E2
    assert BASE_SPEC.apply("h", E1) == -2 * E1
    assert BASE_SPEC.apply("h", E2) == -4 * E2


def test_weights_are_degrees():
    E1, E2 = E_RING.gen("E1"), E_RING.gen("E2")
    p = E1 ** 2 * E2
    assert BASE_SPEC.apply("h", p) == -8 * p


def test_iterate_f():
    E1 = E_RING.gen("E1")
    assert iterate_f(E_RING.one, 0, BASE_SPEC) == E_RING.one
    assert iterate_f(E_RING.one, 1, BASE_SPEC).is_zero()
    assert iterate_f(E1, 1, BASE_SPEC) == BASE_SPEC.apply("f", E1)


def test_flat_twists():
    for a in (Fraction(0), Fraction(1), Fraction(-3, 2)):
        assert check_flat_twist(TwistData(a))
