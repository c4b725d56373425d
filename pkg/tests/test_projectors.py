"""Projectors, certified dotted cup/cap maps, quiver relations."""

from fractions import Fraction

import pytest

import dottedtl.words as words
from dottedtl import projectors
from dottedtl.ring import E_RING
from dottedtl.statespace import PolyMatrix, generator_matrix
from dottedtl.words import Combo, DtlParams, Word, identity_word, verify_relations

P0 = DtlParams(Fraction(0), Fraction(0))
PH = DtlParams(Fraction(0), Fraction(1, 2))


def test_p2_closed_form():
    cc = Combo.of(Word((("cap",), ("cup",)))).evaluate()
    want = Combo.of(identity_word(2)).evaluate() \
        - cc.scale(E_RING.const(Fraction(1, 2)))
    assert projectors.jw(2) == want


def test_projector_identities():
    for n in range(7):
        m = projectors.jw(n)
        assert m * m == m
        for i in range(n - 1):
            assert (generator_matrix("cap", i, n) * m).is_zero()
            assert (m * generator_matrix("cup", i, n - 2)).is_zero()


def test_recursion_equals_symmetrizer():
    for n in range(7):
        assert projectors.jw(n) == projectors.jw_bruteforce(n)


def test_word_level_projector_matches_matrix():
    for n in range(4):
        assert projectors.jw_word(n).evaluate() == projectors.jw(n)


def test_projector_matrix_is_parameter_free():
    assert projectors.jw(3, P0) == projectors.jw(3, DtlParams(1, 2))


def test_un_dn_certified():
    for a2 in (Fraction(0), Fraction(1), Fraction(-3)):
        p = DtlParams(Fraction(0), a2)
        for n in range(4):
            u = projectors.un(n, p)
            assert not u.mat.is_zero()
        for n in range(2, 5):
            d = projectors.dn(n, p)
            assert not d.mat.is_zero()


def test_un_eigen_stream():
    """The f-stream of the certified cup map is its eigenvalue multiple."""
    E1 = E_RING.gen("E1")
    for a2 in (Fraction(0), Fraction(1, 2)):
        p = DtlParams(Fraction(0), a2)
        u = projectors.un(2, p)
        assert u.streams["e"].is_zero()
        assert u.streams["f"] == u.mat.scale((1 - a2) * E1)
        assert u.streams["h"] == u.mat.scale(E_RING.const(2 * a2 - 2))


def test_dn_scalar_normalization():
    """The cap map carries the n(n-1) factor: sanity against a raw sandwich."""
    p = P0
    n = 3
    raw = projectors.dn(n, p).mat
    mid = Combo.of(identity_word(n - 2)).tensor(
        Combo.of(Word((("dot", "id"), ("cap",))))
    ).evaluate()
    sandwich = projectors.jw(n - 2) * (mid * projectors.jw(n))
    assert raw == sandwich.scale(E_RING.const(n * (n - 1)))


def test_quiver_relations():
    rep = projectors.quiver_check(4, PH)
    assert rep["ok"], rep


def test_braid_relations():
    assert projectors.braid_check(4)


def test_negative_control_corrupted_action(monkeypatch):
    """Setting f(dot) = 0 must break relation preservation."""
    orig = words._prim_images

    def corrupted(g, prim, p):
        if g == "f" and prim == "dot":
            return []
        return orig(g, prim, p)

    monkeypatch.setattr(words, "_prim_images", corrupted)
    rep = verify_relations(DtlParams(Fraction(0), Fraction(0)), n_max=2)
    assert not rep["ok"]


def test_negative_control_sign_flipped_cap_map():
    """Flipping the sign of the cap map must break the quiver relation
    D o U = -z^2 modulo (E1, E2)."""
    p = P0
    n = 2
    u = projectors.un(n, p).mat
    d = projectors.dn(n + 2, p).mat
    z = projectors.zn_matrix(n, p)
    lhs_good = projectors._mod_EE(d * u)
    rhs = projectors._mod_EE(PolyMatrix(n, n) - z * z)
    assert lhs_good == rhs
    lhs_bad = projectors._mod_EE((d.scale(E_RING.const(-1))) * u)
    assert lhs_bad != rhs


def test_certification_failure_raises():
    """A nonzero a1 breaks the eigen-equations, and certification says so."""
    with pytest.raises(projectors.ProjectorError):
        projectors.un(2, DtlParams(Fraction(1), Fraction(0)))
