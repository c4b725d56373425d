"""State-space model: primitive matrices, relations, intrinsic action."""

import random
from fractions import Fraction

from dottedtl.ring import E_RING
from dottedtl.statespace import (
    PRIM_MATRICES,
    PolyMatrix,
    apply_intrinsic,
    basis_qdegree,
    basis_weight,
    commutator_star,
    generator_matrix,
)
from dottedtl.words import Combo, random_word

E1 = E_RING.gen("E1")
E2 = E_RING.gen("E2")

DOT = PRIM_MATRICES["dot"]
CUP = PRIM_MATRICES["cup"]
CAP = PRIM_MATRICES["cap"]
ID1 = PolyMatrix.identity(1)


def test_circle_is_two():
    assert CAP * CUP == PolyMatrix.identity(0).scale(E_RING.const(2))


def test_dot_squared():
    assert DOT * DOT == DOT.scale(E1) - ID1.scale(E2)


def test_dot_slide():
    id2 = PolyMatrix.identity(2)
    dot1 = generator_matrix("dot", 0, 2)
    dot2 = generator_matrix("dot", 1, 2)
    cc = CUP * CAP
    lhs = dot1 + dot2
    rhs = (id2 - cc).scale(E1) + dot1 * cc + cc * dot1
    assert lhs == rhs


def test_cup_cap_shapes():
    assert CUP.n_in == 0 and CUP.n_out == 2
    assert CAP.n_in == 2 and CAP.n_out == 0


def test_basis_weights():
    # first strand is the most significant bit; A1 has weight +1
    assert basis_weight(0, 2) == 2
    assert basis_weight(3, 2) == -2
    assert basis_qdegree(1, 2) == 0
    assert basis_qdegree(3, 3) == 1


def test_matrix_arithmetic():
    rng = random.Random(5)
    for _ in range(10):
        a = Combo.of(random_word(rng, max_strands=3)).evaluate()
        assert a + PolyMatrix(a.n_out, a.n_in) == a
        assert (a - a).is_zero()
        assert a.scale(E_RING.const(2)) == a + a


def test_commutator_bracket():
    """[h, e] = 2e and friends, as operators on matrices."""
    rng = random.Random(6)
    mats = [PRIM_MATRICES[p] for p in ("id", "dot", "cup", "cap")]
    mats += [Combo.of(random_word(rng, max_strands=3)).evaluate()
             for _ in range(15)]
    for m in mats:
        he = commutator_star("h", commutator_star("e", m)) \
            - commutator_star("e", commutator_star("h", m))
        assert he == commutator_star("e", m).scale(E_RING.const(2))
        ef = commutator_star("e", commutator_star("f", m)) \
            - commutator_star("f", commutator_star("e", m))
        assert ef == commutator_star("h", m)


def test_h_commutator_reads_degree():
    rng = random.Random(9)
    for _ in range(15):
        m = Combo.of(random_word(rng, max_strands=3)).evaluate()
        deg = m.qdegree()
        if deg is None or m.is_zero():
            continue
        assert commutator_star("h", m) == m.scale(E_RING.const(-deg))


def test_intrinsic_action_letters():
    # dot sends the top letter down: e(dot image of A1 word) etc.
    v = apply_intrinsic("e", {1: E_RING.one}, 1)  # A0
    assert v == {0: E_RING.const(-1)}
    assert apply_intrinsic("e", {0: E_RING.one}, 1) == {}
    h1 = apply_intrinsic("h", {0: E_RING.one}, 1)
    assert h1 == {0: E_RING.one}


def test_qdegree_of_primitives():
    assert PRIM_MATRICES["dot"].qdegree() == 2
    assert PRIM_MATRICES["cup"].qdegree() == 0
    assert PRIM_MATRICES["cap"].qdegree() == 0
    assert PolyMatrix.identity(3).qdegree() == 0
