"""Generic sl2 derivation machinery on graded polynomial rings.

An action spec records, for each ring generator, its images under e and f
and its integer h-weight.  The action extends to the whole ring as a
derivation (power rule handles Laurent exponents), which is exactly how the
triangular operators act on every coefficient ring in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import E_RING, LASAGNA_RING, GradedPoly, PolyRing

GENERATORS = ("e", "f", "h")


class Sl2ActionSpec:
    """Derivation data on a PolyRing: e/f images and h-weights per generator."""

    def __init__(self, ring: PolyRing, e_images, f_images, h_weights):
        self.ring = ring
        self.e_images = {n: ring.coerce(p) for n, p in e_images.items()}
        self.f_images = {n: ring.coerce(p) for n, p in f_images.items()}
        self.h_weights = {n: int(w) for n, w in h_weights.items()}
        for name in ring.names:
            if name not in self.e_images or name not in self.f_images \
                    or name not in self.h_weights:
                raise KeyError(f"incomplete action data for generator {name}")

    def weight_of_monomial(self, exp: tuple) -> int:
        return sum(
            p * self.h_weights[name] for p, name in zip(exp, self.ring.names)
        )

    def apply(self, g: str, x: GradedPoly) -> GradedPoly:
        """Apply e, f, or h to a polynomial by the Leibniz rule."""
        if x.ring is not self.ring:
            raise ValueError("polynomial from a different ring")
        if g == "h":
            terms = {}
            for e, c in x.terms.items():
                w = self.weight_of_monomial(e)
                if w:
                    terms[e] = c * w
            return GradedPoly(self.ring, terms)
        images = self.e_images if g == "e" else self.f_images
        out = self.ring.zero
        for exp, c in x.terms.items():
            for i, name in enumerate(self.ring.names):
                p = exp[i]
                if p == 0:
                    continue
                img = images[name]
                if img.is_zero():
                    continue
                # power rule: d(g^p) = p * g^(p-1) * d(g)
                rest = list(exp)
                rest[i] = p - 1
                out = out + (c * p) * GradedPoly(
                    self.ring, {tuple(rest): Fraction(1)}
                ) * img
        return out

    def serialize(self) -> dict:
        """Declarative text form (generator -> three images), for fixtures."""
        return {
            name: {
                "e": str(self.e_images[name]),
                "f": str(self.f_images[name]),
                "h": self.h_weights[name],
            }
            for name in self.ring.names
        }


def base_spec(ring: PolyRing = E_RING) -> Sl2ActionSpec:
    """The action on the symmetric-polynomial base ring (E1, E2 generators)."""
    E1, E2 = ring.gen("E1"), ring.gen("E2")
    e_images = {"E1": ring.const(-2), "E2": -E1}
    f_images = {"E1": E1 * E1 - 2 * E2, "E2": E1 * E2}
    h_weights = {"E1": -2, "E2": -4}
    for name in ring.names:
        e_images.setdefault(name, ring.zero)
        f_images.setdefault(name, ring.zero)
        h_weights.setdefault(name, 0)
    return Sl2ActionSpec(ring, e_images, f_images, h_weights)


def lasagna_spec(ring: PolyRing = LASAGNA_RING) -> Sl2ActionSpec:
    """The action on Q[E1,E2][A0^{+-1},A1]; A0^{-1} images follow from the power rule."""
    E1, E2 = ring.gen("E1"), ring.gen("E2")
    A1, A0 = ring.gen("A1"), ring.gen("A0")
    half = Fraction(1, 2)
    return Sl2ActionSpec(
        ring,
        e_images={"E1": ring.const(-2), "E2": -E1, "A1": ring.zero, "A0": -A1},
        f_images={
            "E1": E1 * E1 - 2 * E2,
            "E2": E1 * E2,
            "A1": -half * E1 * A1,
            "A0": half * E1 * A0 - E2 * A1,
        },
        h_weights={"E1": -2, "E2": -4, "A1": 1, "A0": -1},
    )


def check_bracket(spec: Sl2ActionSpec, samples) -> list:
    """Verify [h,e]=2e, [h,f]=-2f, [e,f]=h on each sample; returns failures."""
    failures = []
    for x in samples:
        checks = [
            ("[h,e]=2e",
             spec.apply("h", spec.apply("e", x)) - spec.apply("e", spec.apply("h", x)),
             2 * spec.apply("e", x)),
            ("[h,f]=-2f",
             spec.apply("h", spec.apply("f", x)) - spec.apply("f", spec.apply("h", x)),
             -2 * spec.apply("f", x)),
            ("[e,f]=h",
             spec.apply("e", spec.apply("f", x)) - spec.apply("f", spec.apply("e", x)),
             spec.apply("h", x)),
        ]
        for label, lhs, rhs in checks:
            if lhs != rhs:
                failures.append({
                    "identity": label,
                    "sample": str(x),
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                })
    return failures


def iterate_f(x: GradedPoly, r: int, spec: Sl2ActionSpec) -> GradedPoly:
    """f applied r times; iterate_f(x, 0) = x."""
    if r < 0:
        raise ValueError("r must be non-negative")
    for _ in range(r):
        x = spec.apply("f", x)
    return x


@dataclass(frozen=True)
class TwistData:
    """Rank-one twist by a*E1: f gains a*E1, h gains -2a on the object generator."""

    a: Fraction
    q_shift: int = 0

    def tau(self, g: str, ring: PolyRing = E_RING) -> GradedPoly:
        if g == "e":
            return ring.zero
        if g == "f":
            return Fraction(self.a) * ring.gen("E1")
        if g == "h":
            return ring.const(-2 * Fraction(self.a))
        raise ValueError(g)


def check_flat_twist(t: TwistData, spec: Sl2ActionSpec | None = None) -> bool:
    """Flatness of tau: tau([g1,g2]) = g1.tau(g2) - g2.tau(g1) for all brackets.

    Always true for the a*E1 family (e(a*E1) = -2a); kept as a regression guard.
    """
    spec = spec or base_spec()
    ring = spec.ring
    tau = {g: t.tau(g, ring) for g in GENERATORS}
    brackets = [  # ([g1,g2], g1, g2)
        (2 * tau["e"], "h", "e"),
        (-2 * tau["f"], "h", "f"),
        (tau["h"], "e", "f"),
    ]
    for lhs, g1, g2 in brackets:
        rhs = spec.apply(g1, tau[g2]) - spec.apply(g2, tau[g1])
        if lhs != rhs:
            return False
    return True


BASE_SPEC = base_spec()
LASAGNA_SPEC = lasagna_spec()
