"""Concrete model of the diagram category: V_n = V_1^{tensor n} over Q[E1,E2].

Each strand carries a rank-2 free module with basis A1 (cup) and A0 (dotted
cup); dot acts as multiplication by a root of x^2 - E1*x + E2.  Matrices over
the base ring are the semantic values of diagrams and the equality oracle.

Basis convention: words over {A1, A0}, A1 < A0, lexicographic; index bit 0 is
A1 and bit 1 is A0, with the first strand in the most significant position.
"""

from __future__ import annotations

from fractions import Fraction

from .ring import E_RING, GradedPoly, RingError
from .sl2 import BASE_SPEC, GENERATORS, TwistData

E1 = E_RING.gen("E1")
E2 = E_RING.gen("E2")

A1, A0 = 0, 1  # bit values of the two basis letters


def basis_labels(n: int):
    """All 2^n tensor words, index order."""
    return [
        "".join("A0" if (i >> (n - 1 - k)) & 1 else "A1" for k in range(n))
        for i in range(2 ** n)
    ]


def basis_weight(index: int, n: int) -> int:
    """h-weight of a basis word: (#A1) - (#A0)."""
    ones = bin(index).count("1")
    return n - 2 * ones


def basis_qdegree(index: int, n: int) -> int:
    """q-degree of a basis word: (#A0) - (#A1)."""
    return -basis_weight(index, n)


class PolyMatrix:
    """Sparse rectangular matrix over Q[E1,E2], indexed by state bases.

    Shape is recorded in strand counts: a map V_{n_in} -> V_{n_out} has
    2^{n_out} rows and 2^{n_in} columns.  Entries are stored column-major
    (cols[j][i]) and zero entries are never stored.
    """

    __slots__ = ("n_out", "n_in", "cols")

    def __init__(self, n_out: int, n_in: int, entries=None):
        self.n_out = n_out
        self.n_in = n_in
        self.cols: dict = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    @property
    def nrows(self):
        return 2 ** self.n_out

    @property
    def ncols(self):
        return 2 ** self.n_in

    def __setitem__(self, key, value):
        i, j = key
        v = E_RING.coerce(value)
        col = self.cols.setdefault(j, {})
        if v.is_zero():
            col.pop(i, None)
            if not col:
                del self.cols[j]
        else:
            col[i] = v

    def __getitem__(self, key):
        i, j = key
        return self.cols.get(j, {}).get(i, E_RING.zero)

    def entries(self):
        for j, col in self.cols.items():
            for i, v in col.items():
                yield (i, j), v

    def nnz(self):
        return sum(len(col) for col in self.cols.values())

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        m = cls(n, n)
        one = E_RING.one
        for i in range(2 ** n):
            m.cols[i] = {i: one}
        return m

    @classmethod
    def zero(cls, n_out: int, n_in: int) -> "PolyMatrix":
        return cls(n_out, n_in)

    def copy(self) -> "PolyMatrix":
        m = PolyMatrix(self.n_out, self.n_in)
        m.cols = {j: dict(col) for j, col in self.cols.items()}
        return m

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.n_out, self.n_in) != (other.n_out, other.n_in):
            raise ValueError("shape mismatch")
        m = self.copy()
        for j, col in other.cols.items():
            mc = m.cols.setdefault(j, {})
            for i, v in col.items():
                s = mc.get(i, E_RING.zero) + v
                if s.is_zero():
                    mc.pop(i, None)
                else:
                    mc[i] = s
            if not mc:
                del m.cols[j]
        return m

    def __neg__(self) -> "PolyMatrix":
        m = PolyMatrix(self.n_out, self.n_in)
        m.cols = {j: {i: -v for i, v in col.items()} for j, col in self.cols.items()}
        return m

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def scale(self, c) -> "PolyMatrix":
        c = E_RING.coerce(c)
        if c.is_zero():
            return PolyMatrix(self.n_out, self.n_in)
        m = PolyMatrix(self.n_out, self.n_in)
        m.cols = {
            j: {i: v * c for i, v in col.items()} for j, col in self.cols.items()
        }
        return m

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        """Composition self o other (apply other first)."""
        if self.n_in != other.n_out:
            raise ValueError("shape mismatch in product")
        m = PolyMatrix(self.n_out, other.n_in)
        ring = E_RING
        for j, ocol in other.cols.items():
            # accumulate raw term dicts to avoid intermediate polynomials
            acc: dict = {}
            for k, v in ocol.items():
                scol = self.cols.get(k)
                if not scol:
                    continue
                vt = v.terms
                for i, w in scol.items():
                    tacc = acc.get(i)
                    if tacc is None:
                        tacc = acc[i] = {}
                    for e1, c1 in w.terms.items():
                        for e2, c2 in vt.items():
                            e = tuple(a + b for a, b in zip(e1, e2))
                            c = tacc.get(e)
                            tacc[e] = c1 * c2 if c is None else c + c1 * c2
            col = {}
            for i, tacc in acc.items():
                terms = {e: c for e, c in tacc.items() if c}
                if terms:
                    col[i] = GradedPoly(ring, terms)
            if col:
                m.cols[j] = col
        return m

    def tensor(self, other: "PolyMatrix") -> "PolyMatrix":
        """Kronecker product; self occupies the leading strands."""
        m = PolyMatrix(self.n_out + other.n_out, self.n_in + other.n_in)
        ro, co = 2 ** other.n_out, 2 ** other.n_in
        for j1, col1 in self.cols.items():
            for j2, col2 in other.cols.items():
                j = j1 * co + j2
                acc = m.cols.setdefault(j, {})
                for i1, v1 in col1.items():
                    for i2, v2 in col2.items():
                        acc[i1 * ro + i2] = v1 * v2
        return m

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if (self.n_out, self.n_in) != (other.n_out, other.n_in):
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("PolyMatrix is unhashable")

    def is_zero(self) -> bool:
        return not self.cols

    def map_entries(self, fn) -> "PolyMatrix":
        m = PolyMatrix(self.n_out, self.n_in)
        for (i, j), v in self.entries():
            m[i, j] = fn(v)
        return m

    def substitute(self, values) -> "PolyMatrix":
        return self.map_entries(lambda p: p.substitute(values))

    def qdegree(self):
        """q-degree if homogeneous (deg entry + deg(row) - deg(col) uniform), else None."""
        degs = set()
        for (i, j), v in self.entries():
            if not v.is_homogeneous():
                return None
            degs.add(
                v.homogeneous_degree()
                + basis_qdegree(i, self.n_out)
                - basis_qdegree(j, self.n_in)
            )
            if len(degs) > 1:
                return None
        return degs.pop() if degs else 0

    def to_dict(self) -> dict:
        rows = basis_labels(self.n_out)
        cols = basis_labels(self.n_in)
        return {
            "rows": rows,
            "cols": cols,
            "entries": {
                f"{rows[i]}|{cols[j]}": str(v) for (i, j), v in sorted(self.entries())
            },
        }

    def __repr__(self):
        return f"PolyMatrix({self.n_out}<-{self.n_in}, nnz={self.nnz()})"


# -- generator matrices -----------------------------------------------------

def _dot_matrix() -> PolyMatrix:
    m = PolyMatrix(1, 1)
    m[1, 0] = 1          # dot(A1) = A0
    m[1, 1] = E1         # dot(A0) = E1*A0 - E2*A1
    m[0, 1] = -E2
    return m

def _cup_matrix() -> PolyMatrix:
    m = PolyMatrix(2, 0)
    m[0b01, 0] = 1       # A1 (x) A0
    m[0b10, 0] = 1       # A0 (x) A1
    m[0b00, 0] = -E1     # -E1 * A1 (x) A1
    return m

def _cap_matrix() -> PolyMatrix:
    m = PolyMatrix(0, 2)
    m[0, 0b01] = 1
    m[0, 0b10] = 1
    m[0, 0b11] = E1
    return m


PRIM_MATRICES = {
    "id": PolyMatrix.identity(1),
    "dot": _dot_matrix(),
    "cup": _cup_matrix(),
    "cap": _cap_matrix(),
}

PRIM_ARITY = {"id": (1, 1), "dot": (1, 1), "cup": (0, 2), "cap": (2, 0)}


def generator_matrix(gen: str, position: int, n: int) -> PolyMatrix:
    """Matrix of one primitive at a strand position inside n ambient strands.

    For dot/id, position indexes the strand acted on (0-based, < n).  For
    cup, position is the insertion point into n strands (0..n).  For cap,
    position indexes the first of two adjacent strands removed (0..n-2).
    """
    if gen not in PRIM_ARITY:
        raise ValueError(f"unknown generator {gen!r}")
    a_in, _ = PRIM_ARITY[gen]
    max_pos = n if gen == "cup" else n - a_in
    if position < 0 or position > max_pos:
        raise ValueError(f"invalid position {position} for {gen} at n={n}")
    left = PolyMatrix.identity(position)
    right = PolyMatrix.identity(n - position - a_in)
    return left.tensor(PRIM_MATRICES[gen]).tensor(right)


# -- intrinsic sl2 action ---------------------------------------------------

# Images of the basis letters under the module action (5.3.1 conventions):
#   e(A1)=0, f(A1)=-1/2*E1*A1, h(A1)=+1*A1
#   e(A0)=-A1, f(A0)=1/2*E1*A0 - E2*A1, h(A0)=-1*A0
_HALF = Fraction(1, 2)
LETTER_IMAGES = {
    "e": {A1: [], A0: [(A1, E_RING.const(-1))]},
    "f": {A1: [(A1, -_HALF * E1)], A0: [(A0, _HALF * E1), (A1, -E2)]},
    "h": {A1: [(A1, E_RING.one)], A0: [(A0, E_RING.const(-1))]},
}


def apply_intrinsic(g: str, vec: dict, n: int) -> dict:
    """Apply e/f/h to a vector {index: GradedPoly} in V_n by the Leibniz rule.

    Acts on polynomial coefficients through the base-ring derivation and on
    each tensor factor through the letter table.
    """
    if g not in GENERATORS:
        raise ValueError(g)
    out: dict = {}

    def add(i, p):
        s = out.get(i, E_RING.zero) + p
        if s.is_zero():
            out.pop(i, None)
        else:
            out[i] = s

    for idx, coeff in vec.items():
        dc = BASE_SPEC.apply(g, coeff)
        if not dc.is_zero():
            add(idx, dc)
        for k in range(n):
            bit = (idx >> (n - 1 - k)) & 1
            for new_bit, img in LETTER_IMAGES[g][bit]:
                new_idx = idx if new_bit == bit else idx ^ (1 << (n - 1 - k))
                add(new_idx, coeff * img)
    return out


def intrinsic_action_columns(g: str, n: int):
    """Images of the 2^n basis words under g, as vectors (no coefficient term)."""
    return [apply_intrinsic(g, {i: E_RING.one}, n) for i in range(2 ** n)]


ZERO_TWIST = TwistData(Fraction(0))


def commutator_star(
    g: str,
    F: PolyMatrix,
    source_twist: TwistData = ZERO_TWIST,
    target_twist: TwistData = ZERO_TWIST,
) -> PolyMatrix:
    """The commutator action on morphism spaces: g*F = g o F - F o g,
    plus the rank-one twist corrections on source and target.

    The commutator of the base-derivation operator with a matrix is again
    base-linear, hence a PolyMatrix.
    """
    n_in, n_out = F.n_in, F.n_out
    out = PolyMatrix(n_out, n_in)
    for j in range(2 ** n_in):
        col = F.cols.get(j, {})
        gFb = apply_intrinsic(g, col, n_out) if col else {}
        gb = apply_intrinsic(g, {j: E_RING.one}, n_in)
        # F applied to g(b_j)
        Fgb: dict = {}
        for k, v in gb.items():
            for i, w in F.cols.get(k, {}).items():
                s = Fgb.get(i, E_RING.zero) + w * v
                if s.is_zero():
                    Fgb.pop(i, None)
                else:
                    Fgb[i] = s
        for i in set(gFb) | set(Fgb):
            val = gFb.get(i, E_RING.zero) - Fgb.get(i, E_RING.zero)
            if not val.is_zero():
                out[i, j] = val
    a_src, a_tgt = Fraction(source_twist.a), Fraction(target_twist.a)
    if a_src != a_tgt:
        if g == "f":
            out = out + F.scale((a_tgt - a_src) * E1)
        elif g == "h":
            out = out + F.scale(E_RING.const(2 * (a_src - a_tgt)))
    return out
