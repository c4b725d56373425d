"""Formal diagram words in the dotted planar calculus.

A word is a stack of slices, each slice a horizontal tensor of primitives
(id, dot, cup, cap), composed bottom to top.  Formal linear combinations
with polynomial coefficients carry the parameterized sl2 action by the
Leibniz rule; equality testing happens in the state-space matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import exactla
from .ring import E_RING, GradedPoly
from .sl2 import BASE_SPEC, GENERATORS
from .statespace import PRIM_ARITY, PRIM_MATRICES, PolyMatrix

E1 = E_RING.gen("E1")
E2 = E_RING.gen("E2")


class WordError(Exception):
    pass


@dataclass(frozen=True)
class DtlParams:
    """The two free parameters of the sl2 action on cups and caps."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)

    @classmethod
    def parse(cls, text: str) -> "DtlParams":
        a1, a2 = (Fraction(part.strip()) for part in text.split(","))
        return cls(a1, a2)


class Word:
    """An immutable stack of slices with validated strand counts."""

    __slots__ = ("slices", "counts", "_hash")

    def __init__(self, slices):
        slices = tuple(tuple(s) for s in slices)
        if not slices:
            raise WordError("a word needs at least one slice (use identity_word)")
        counts = []
        cur = None
        for k, sl in enumerate(slices):
            for p in sl:
                if p not in PRIM_ARITY:
                    raise WordError(f"unknown primitive {p!r}")
            n_in = sum(PRIM_ARITY[p][0] for p in sl)
            n_out = sum(PRIM_ARITY[p][1] for p in sl)
            if cur is not None and n_in != cur:
                raise WordError(f"strand mismatch at slice {k}: {n_in} != {cur}")
            if cur is None:
                counts.append(n_in)
            counts.append(n_out)
            cur = n_out
        self.slices = slices
        self.counts = tuple(counts)
        self._hash = hash(slices)

    @property
    def n_in(self):
        return self.counts[0]

    @property
    def n_out(self):
        return self.counts[-1]

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Word) and self.slices == other.slices

    def __repr__(self):
        return " ; ".join("|".join(s) if s else "()" for s in self.slices)


def identity_word(n: int) -> Word:
    return Word((("id",) * n,))


class Combo:
    """Formal linear combination of words with GradedPoly coefficients."""

    __slots__ = ("terms", "n_in", "n_out")

    def __init__(self, terms=None, n_in=None, n_out=None):
        self.terms: dict = {}
        self.n_in = n_in
        self.n_out = n_out
        if terms:
            for w, c in terms.items():
                self._add(w, c)

    @classmethod
    def of(cls, word: Word, coeff=1) -> "Combo":
        return cls({word: E_RING.coerce(coeff)}, word.n_in, word.n_out)

    @classmethod
    def zero(cls, n_in, n_out) -> "Combo":
        return cls(None, n_in, n_out)

    def _add(self, w: Word, c):
        c = E_RING.coerce(c)
        if self.n_in is None:
            self.n_in, self.n_out = w.n_in, w.n_out
        elif (w.n_in, w.n_out) != (self.n_in, self.n_out):
            raise WordError("adding words of different shapes")
        s = self.terms.get(w, E_RING.zero) + c
        if s.is_zero():
            self.terms.pop(w, None)
        else:
            self.terms[w] = s

    def __add__(self, other: "Combo") -> "Combo":
        out = Combo(self.terms, self.n_in, self.n_out)
        if other.n_in is not None and self.n_in is not None and \
                (other.n_in, other.n_out) != (self.n_in, self.n_out):
            raise WordError("shape mismatch")
        for w, c in other.terms.items():
            out._add(w, c)
        if out.n_in is None:
            out.n_in, out.n_out = other.n_in, other.n_out
        return out

    def __neg__(self):
        return Combo({w: -c for w, c in self.terms.items()}, self.n_in, self.n_out)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Combo":
        c = E_RING.coerce(c)
        if c.is_zero():
            return Combo.zero(self.n_in, self.n_out)
        return Combo({w: v * c for w, v in self.terms.items()}, self.n_in, self.n_out)

    def then(self, other: "Combo") -> "Combo":
        """Stack: self applied first, then other."""
        if self.n_out != other.n_in:
            raise WordError(
                f"cannot stack: {self.n_out} output strands vs {other.n_in} inputs"
            )
        out = Combo.zero(self.n_in, other.n_out)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._add(Word(w1.slices + w2.slices), c1 * c2)
        return out

    def tensor(self, other: "Combo") -> "Combo":
        out = Combo.zero(self.n_in + other.n_in, self.n_out + other.n_out)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._add(_tensor_words(w1, w2), c1 * c2)
        return out

    def evaluate(self) -> PolyMatrix:
        out = PolyMatrix(self.n_out, self.n_in)
        for w, c in self.terms.items():
            out = out + evaluate_word(w).scale(c)
        return out

    def is_empty(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*[{w!r}]" for w, c in self.terms.items())


def _tensor_words(w1: Word, w2: Word) -> Word:
    h = max(len(w1.slices), len(w2.slices))
    s1 = list(w1.slices) + [("id",) * w1.n_out] * (h - len(w1.slices))
    s2 = list(w2.slices) + [("id",) * w2.n_out] * (h - len(w2.slices))
    return Word(tuple(a + b for a, b in zip(s1, s2)))


# -- evaluation -------------------------------------------------------------

_slice_cache: dict = {}
_word_cache: dict = {}


def _slice_matrix(sl: tuple) -> PolyMatrix:
    m = _slice_cache.get(sl)
    if m is None:
        m = PolyMatrix.identity(0)
        for p in sl:
            m = m.tensor(PRIM_MATRICES[p])
        _slice_cache[sl] = m
    return m


def evaluate_word(w: Word) -> PolyMatrix:
    m = _word_cache.get(w)
    if m is None:
        m = PolyMatrix.identity(w.n_in)
        for sl in w.slices:
            m = _slice_matrix(sl) * m
        _word_cache[w] = m
    return m


# -- the parameterized sl2 action -------------------------------------------

def _prim_images(g: str, prim: str, p: DtlParams):
    """Image of one primitive as [(coefficient, local slices)], empty if zero."""
    a1, a2 = p.a1, p.a2
    if prim == "id":
        return []
    if prim == "dot":
        if g == "e":
            return [(E_RING.const(-1), (("id",),))]
        if g == "f":
            return [(E_RING.one, (("dot",), ("dot",)))]
        return [(E_RING.const(-2), (("dot",),))]
    if prim == "cup":
        if g == "e":
            return []
        if g == "f":
            out = []
            if a1:
                out.append((E_RING.const(-a1), (("cup",), ("dot", "id"))))
            if a2:
                out.append((-a2 * E1, (("cup",),)))
            return out
        c = a1 + 2 * a2
        return [(E_RING.const(c), (("cup",),))] if c else []
    if prim == "cap":
        if g == "e":
            return []
        if g == "f":
            out = []
            if a1:
                out.append((E_RING.const(a1), (("dot", "id"), ("cap",))))
            if a2:
                out.append((a2 * E1, (("cap",),)))
            return out
        c = -a1 - 2 * a2
        return [(E_RING.const(c), (("cap",),))] if c else []
    raise WordError(prim)


def _replace_occurrence(w: Word, si: int, pi: int, local: tuple) -> Word:
    sl = w.slices[si]
    before, after = sl[:pi], sl[pi + 1:]
    out_before = sum(PRIM_ARITY[p][1] for p in before)
    out_after = sum(PRIM_ARITY[p][1] for p in after)
    expanded = [before + local[0] + after]
    for ls in local[1:]:
        expanded.append(("id",) * out_before + ls + ("id",) * out_after)
    return Word(w.slices[:si] + tuple(expanded) + w.slices[si + 1:])


def act(g: str, x, params: DtlParams = DtlParams()) -> Combo:
    """Apply e, f, or h to a word or combination by the full Leibniz rule:
    one term per primitive occurrence plus the base-coefficient derivative."""
    if g not in GENERATORS:
        raise WordError(f"unknown sl2 generator {g!r}")
    if isinstance(x, Word):
        x = Combo.of(x)
    out = Combo.zero(x.n_in, x.n_out)
    for w, coeff in x.terms.items():
        dc = BASE_SPEC.apply(g, coeff)
        if not dc.is_zero():
            out._add(w, dc)
        for si, sl in enumerate(w.slices):
            for pi, prim in enumerate(sl):
                for c, local in _prim_images(g, prim, params):
                    out._add(_replace_occurrence(w, si, pi, local), coeff * c)
    return out


# -- handy combos -----------------------------------------------------------

def primitive_combo(prim: str, position: int = 0, n: int | None = None) -> Combo:
    """One primitive inside an ambient identity context."""
    a_in, _ = PRIM_ARITY[prim]
    if n is None:
        n = position + a_in
    sl = ("id",) * position + (prim,) + ("id",) * (n - position - a_in)
    return Combo.of(Word((sl,)))


def cupcap_combo(i: int = 0, n: int = 2) -> Combo:
    """The turnback e_i = cap then cup on strands i, i+1 (0-based)."""
    cap = primitive_combo("cap", i, n)
    cup = primitive_combo("cup", i, n - 2)
    return cap.then(cup)


def crossing_combo(i: int = 1, n: int = 2) -> Combo:
    """Symmetric-group image s_i = id - e_i (1-based i, as in s_1..s_{n-1})."""
    if not 1 <= i <= n - 1:
        raise WordError(f"s_{i} needs 1 <= i <= n-1")
    return Combo.of(identity_word(n)) - cupcap_combo(i - 1, n)


def zn_combo(n: int) -> Combo:
    """Alternating sum of single dots: sum_i (-1)^(i-1) dot_i."""
    if n < 0:
        raise WordError("n must be non-negative")
    out = Combo.zero(n, n)
    for i in range(n):
        out = out + primitive_combo("dot", i, n).scale((-1) ** i)
    return out


def ambient(combo: Combo, left: int, right: int) -> Combo:
    """id^left (x) combo (x) id^right."""
    out = combo
    if left:
        out = Combo.of(identity_word(left)).tensor(out)
    if right:
        out = out.tensor(Combo.of(identity_word(right)))
    return out


# -- defining relations -----------------------------------------------------

def relation_instances(n_max: int = 4):
    """The three defining relations, instantiated at every position inside
    ambient identity contexts with at most n_max strands.  Yields
    (name, lhs, rhs) combos."""
    # relation 1 lives on 0 strands: cup then cap closes a circle
    r1_l = Combo.of(Word((("cup",), ("cap",))))
    r1_r = Combo.of(identity_word(0)).scale(2)
    yield ("circle=2", r1_l, r1_r)
    # relation 2: dot^2 = E1*dot - E2*id, on one strand
    dd = Combo.of(Word((("dot",), ("dot",))))
    r2_r = primitive_combo("dot").scale(E1) - Combo.of(identity_word(1)).scale(E2)
    for left in range(n_max):
        for right in range(n_max - left):
            yield (f"dot2[{left}+1+{right}]", ambient(dd, left, right),
                   ambient(r2_r, left, right))
    # relation 3 on two adjacent strands
    two = Combo.of(identity_word(2))
    dots = primitive_combo("dot", 0, 2) + primitive_combo("dot", 1, 2)
    cupcap = cupcap_combo(0, 2)
    capdot = Combo.of(Word((("dot", "id"), ("cap",), ("cup",))))
    cupdot = Combo.of(Word((("cap",), ("cup",), ("dot", "id"))))
    r3_r = two.scale(E1) - cupcap.scale(E1) + capdot + cupdot
    for left in range(n_max - 1):
        for right in range(n_max - 1 - left):
            yield (f"dotslide[{left}+2+{right}]", ambient(dots, left, right),
                   ambient(r3_r, left, right))


def verify_relations(params: DtlParams, n_max: int = 4) -> dict:
    """Check each defining relation and its e/f/h images in the matrix model."""
    results = []
    ok = True
    for name, lhs, rhs in relation_instances(n_max):
        diff = lhs - rhs
        row = {"relation": name, "generator": None,
               "status": "pass" if diff.evaluate().is_zero() else "fail"}
        results.append(row)
        ok = ok and row["status"] == "pass"
        for g in GENERATORS:
            gdiff = act(g, diff, params)
            status = "pass" if gdiff.evaluate().is_zero() else "fail"
            results.append({"relation": name, "generator": g, "status": status})
            ok = ok and status == "pass"
    return {"params": [str(params.a1), str(params.a2)], "ok": ok,
            "checks": results}


# -- crossingless matchings and the spanning set ----------------------------

def noncrossing_matchings(n_bot: int, n_top: int | None = None):
    """Planar (n_bot, n_top)-diagrams as matchings of boundary points.

    Points are ('b', i) for bottom and ('t', j) for top, both left to right.
    Returns each matching as a sorted tuple of sorted point pairs.
    """
    if n_top is None:
        n_top = n_bot
    if (n_bot + n_top) % 2:
        return []
    # circular order: bottom left-to-right, then top right-to-left
    seq = [("b", i) for i in range(n_bot)] + \
        [("t", n_top - 1 - j) for j in range(n_top)]

    def rec(points):
        if not points:
            return [[]]
        out = []
        first = points[0]
        for k in range(1, len(points), 2):
            inner = points[1:k]
            outer = points[k + 1:]
            for mi in rec(inner):
                for mo in rec(outer):
                    out.append([tuple(sorted((first, points[k])))] + mi + mo)
        return out

    return [tuple(sorted(m)) for m in rec(seq)]


def _dot_power(d: int) -> PolyMatrix:
    m = PolyMatrix.identity(1)
    for _ in range(d):
        m = PRIM_MATRICES["dot"] * m
    return m


def matching_matrix(matching, dots, n_bot: int,
                    n_top: int | None = None) -> PolyMatrix:
    """Evaluate a dotted crossingless matching directly by the state-space
    rules, independently of the word machinery.

    dots: number of dots per arc, aligned with the matching tuple.
    """
    if n_top is None:
        n_top = n_bot
    cup = PRIM_MATRICES["cup"]
    cap = PRIM_MATRICES["cap"]
    out = PolyMatrix(n_top, n_bot)
    for x in range(2 ** n_bot):
        in_bits = [(x >> (n_bot - 1 - i)) & 1 for i in range(n_bot)]
        dist = [(E_RING.one, {})]  # (coefficient, partial top assignment)
        for arc, d in zip(matching, dots):
            dm = _dot_power(d)
            (s1, i1), (s2, i2) = arc
            new = []
            if s1 == "b" and s2 == "b":
                # pairing: cap o (dot^d (x) id) on the two input letters
                val = E_RING.zero
                for y, v in dm.cols.get(in_bits[i1], {}).items():
                    val = val + v * cap[0, 2 * y + in_bits[i2]]
                if val.is_zero():
                    dist = []
                    break
                new = [(c * val, a) for c, a in dist]
            elif s1 == "t" and s2 == "t":
                # copairing: (dot^d (x) id) o cup distributes over two outputs
                for y, v in cup.cols.get(0, {}).items():
                    b1, b2 = (y >> 1) & 1, y & 1
                    for z, w in dm.cols.get(b1, {}).items():
                        for c, a in dist:
                            a2 = dict(a)
                            a2[i1] = z
                            a2[i2] = b2
                            new.append((c * v * w, a2))
            else:
                bi = i1 if s1 == "b" else i2
                tj = i2 if s2 == "t" else i1
                for y, v in dm.cols.get(in_bits[bi], {}).items():
                    for c, a in dist:
                        a2 = dict(a)
                        a2[tj] = y
                        new.append((c * v, a2))
            dist = new
        for c, a in dist:
            y = 0
            for j in range(n_top):
                y = (y << 1) | a[j]
            out[y, x] = out[y, x] + c
    return out


def dotted_spanning_set(n_bot: int, n_top: int | None = None):
    """Crossingless matchings with at most one dot per arc: (matching, dots)."""
    out = []
    for m in noncrossing_matchings(n_bot, n_top):
        for dots in itertools.product((0, 1), repeat=len(m)):
            out.append((m, dots))
    return out


def matching_to_word(matching, dots, n_bot: int,
                     n_top: int | None = None) -> Word:
    """A word (caps, then dots on through strands, then cups) evaluating to
    the given dotted crossingless matching."""
    if n_top is None:
        n_top = n_bot
    bottom: dict = {}
    top: dict = {}
    through = []
    for arc, d in zip(matching, dots):
        (s1, i1), (s2, i2) = arc
        if s1 == "b" and s2 == "b":
            bottom[(min(i1, i2), max(i1, i2))] = d
        elif s1 == "t" and s2 == "t":
            top[(min(i1, i2), max(i1, i2))] = d
        else:
            bi = i1 if s1 == "b" else i2
            tj = i2 if s2 == "t" else i1
            through.append((bi, tj, d))

    def dot_slice(k, width):
        return ("id",) * k + ("dot",) + ("id",) * (width - 1 - k)

    slices = []
    # caps: an innermost bottom arc always has adjacent endpoints
    cur = list(range(n_bot))
    pending = dict(bottom)
    while pending:
        for k in range(len(cur) - 1):
            key = (cur[k], cur[k + 1])
            if key in pending:
                for _ in range(pending.pop(key)):
                    slices.append(dot_slice(k, len(cur)))
                slices.append(("id",) * k + ("cap",) +
                              ("id",) * (len(cur) - 2 - k))
                del cur[k:k + 2]
                break
        else:
            raise WordError("matching is not planar")
    # dots on through strands (order preserved by planarity)
    through.sort()
    for k, (_, _, d) in enumerate(through):
        for _ in range(d):
            slices.append(dot_slice(k, len(through)))
    # cups: build the flipped cap sequence of the top arcs, then reverse it
    fcur = list(range(n_top))
    pending = dict(top)
    flipped = []
    while pending:
        for k in range(len(fcur) - 1):
            key = (fcur[k], fcur[k + 1])
            if key in pending:
                d = pending.pop(key)
                flipped.append((k, len(fcur), d))
                del fcur[k:k + 2]
                break
        else:
            raise WordError("matching is not planar")
    for k, width, d in reversed(flipped):
        slices.append(("id",) * k + ("cup",) + ("id",) * (width - 2 - k))
        for _ in range(d):
            slices.append(dot_slice(k, width))
    if not slices:
        return identity_word(n_bot)
    return Word(slices)


RANK_SAMPLE_POINTS = [
    {"E1": Fraction(5), "E2": Fraction(3)},
    {"E1": Fraction(7), "E2": Fraction(2)},
    {"E1": Fraction(11), "E2": Fraction(6)},
]


def _numeric_rows(mats, point):
    size = mats[0].nrows * mats[0].ncols
    rows = []
    for m in mats:
        num = m.substitute(point)
        row = [Fraction(0)] * size
        for (i, j), v in num.entries():
            row[i * m.ncols + j] = v.constant_value()
        rows.append(row)
    return rows


def hom_rank(n: int, bound: int = 5) -> int:
    """Rank of the span of the evaluated dotted spanning set, by random
    integer specialization at three points with required agreement."""
    if n > bound:
        raise WordError(f"hom_rank bound exceeded: {n} > {bound}")
    mats = [matching_matrix(m, d, n) for m, d in dotted_spanning_set(n)]
    if not mats:
        return 1 if n == 0 else 0
    ranks = {exactla.rank(_numeric_rows(mats, pt)) for pt in RANK_SAMPLE_POINTS}
    if len(ranks) != 1:
        raise WordError(f"rank disagreement across sample points: {ranks}")
    return ranks.pop()


# -- random words for property testing --------------------------------------

def random_word(rng, max_strands: int = 4, max_slices: int = 4) -> Word:
    """A random composable word with every intermediate count <= max_strands."""
    n = rng.randint(0, max_strands)
    slices = []
    cur = n
    for _ in range(rng.randint(1, max_slices)):
        sl = []
        remaining = cur
        produced = 0
        while remaining > 0 or (not sl and remaining == 0):
            choices = ["id", "dot"] if remaining else []
            if remaining >= 2:
                choices.append("cap")
            if produced + remaining + 2 <= max_strands:
                choices.append("cup")
            if not choices:
                break
            p = rng.choice(choices)
            sl.append(p)
            a_in, a_out = PRIM_ARITY[p]
            remaining -= a_in
            produced += a_out
        slices.append(tuple(sl))
        cur = produced
    return Word(slices)
