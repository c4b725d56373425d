"""Twisted projector systems and the star action."""

from fractions import Fraction

import pytest

from dottedtl import kirby
from dottedtl.sl2 import TwistData
from dottedtl.words import DtlParams
from dottedtl.projectors import un


def test_level_twist_flatness():
    for n in range(0, 9, 2):
        for a2 in (Fraction(0), Fraction(1, 2)):
            t = kirby.level_twist(n, a2)
            kirby.TwistedObject(n, t)  # raises if not flat
            assert t.q_shift == -n


def test_twist_family_is_flat():
    # every a*E1 twist is flat, whatever the shift; the constructor guard
    # re-checks this as a regression fence
    from dottedtl.sl2 import check_flat_twist

    for a in (Fraction(1), Fraction(-7, 3)):
        t = TwistData(a, q_shift=5)
        assert check_flat_twist(t)
        kirby.TwistedObject(2, t)


def test_small_system_certifies():
    system = kirby.build_kirby(0, 2, Fraction(0))
    rep = system.report()
    assert rep["ok"]
    assert [lv["n"] for lv in rep["levels"]] == [0, 2, 4]
    assert all(c["star_annihilated"] for c in rep["maps"])


def test_star_action_shape_check():
    system = kirby.build_kirby(1, 1, Fraction(0))
    F = system.maps[0]
    with pytest.raises(kirby.KirbyError):
        kirby.star_act_twisted("e", F, system.levels[1], system.levels[0])


def test_star_twist_correction():
    """With the wrong target twist the map is no longer annihilated."""
    system = kirby.build_kirby(0, 1, Fraction(0))
    F = system.maps[0]
    src, tgt = system.levels
    assert kirby.star_act_twisted("f", F, src, tgt).is_zero()
    wrong = kirby.TwistedObject(tgt.n, kirby.level_twist(tgt.n + 2, Fraction(0)))
    assert not kirby.star_act_twisted("f", F, src, wrong).is_zero()


def test_untwisted_map_not_equivariant():
    """The raw dotted cup map has a nonzero f-stream without the twist."""
    u = un(2, DtlParams(Fraction(0), Fraction(0)))
    assert not u.streams["f"].is_zero()


def test_strand_bound():
    with pytest.raises(kirby.KirbyError):
        kirby.build_kirby(1, 4, Fraction(0))


def test_composites_and_closure():
    system = kirby.build_kirby(0, 3, Fraction(1, 2))
    comp = kirby.composite_check(system)
    assert comp["ok"]
    assert kirby.leibniz_closure_check(system)


def test_net_degree_zero():
    system = kirby.build_kirby(1, 2, Fraction(0))
    for F, j in zip(system.maps, range(2)):
        deg = F.mat.qdegree()
        src, tgt = system.levels[j], system.levels[j + 1]
        assert deg + tgt.twist.q_shift - src.twist.q_shift == 0
