"""Drinfeld F_q[T]-modules: the rank-3 family, Carlitz, and reduction at primes."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .algebra import FiniteField, Poly, PrimeIdeal, poly_gcd
from .skew import SkewPoly, ring_A, ring_K

TYPE1 = "Type1"
TYPE2 = "Type2"
NOT_IN_FAMILY = "NotInFamily"


@dataclass(frozen=True)
class FamilyClass:
    tag: str
    gcd_g1: Poly
    gcd_g2: Poly

    @property
    def in_family(self) -> bool:
        return self.tag != NOT_IN_FAMILY


def classify_family(g1: Poly, g2: Poly) -> FamilyClass:
    """Type 1 if gcd(g1, T^q - T) = T, Type 2 if it is T^q - T; g2 must be prime to T^q - T."""
    F = g1.field
    T = Poly.T(F)
    split = T ** F.order - T
    d1 = poly_gcd(g1, split)
    d2 = poly_gcd(g2, split)
    if d2 != Poly(F, (1,)):
        tag = NOT_IN_FAMILY
    elif d1 == T:
        tag = TYPE1
    elif d1 == split:
        tag = TYPE2
    else:
        tag = NOT_IN_FAMILY
    return FamilyClass(tag, d1, d2)


class DrinfeldModule:
    """A Drinfeld module over A = F_q[T] given by phi_T = sum Delta_i tau^i."""

    def __init__(self, Fq: FiniteField, coeffs, g1: Poly | None = None, g2: Poly | None = None):
        self.field = Fq
        self.ring = ring_A(Fq)
        self.phi_T = SkewPoly(self.ring, coeffs)
        if self.phi_T.degree < 1:
            raise ValueError("a Drinfeld module needs positive rank")
        if self.phi_T[0] != Poly.T(Fq):
            raise ValueError("phi_T must have constant term T (generic characteristic)")
        self.g1, self.g2 = g1, g2

    @classmethod
    def family(cls, Fq: FiniteField, g1: Poly, g2: Poly) -> DrinfeldModule:
        """phi_T = T + g1^(q-1) tau + g2^(q-1) tau^2 + T^(q-1) tau^3."""
        q = Fq.order
        T = Poly.T(Fq)
        return cls(Fq, [T, g1 ** (q - 1), g2 ** (q - 1), T ** (q - 1)], g1, g2)

    @classmethod
    def carlitz(cls, Fq: FiniteField) -> DrinfeldModule:
        return cls(Fq, [Poly.T(Fq), Poly(Fq, (1,))])

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def rank(self) -> int:
        return self.phi_T.degree

    @property
    def coeffs(self) -> tuple:
        return self.phi_T.coeffs

    @functools.cached_property
    def family_class(self) -> FamilyClass | None:
        if self.g1 is None:
            return None
        return classify_family(self.g1, self.g2)

    @property
    def family_type(self) -> str | None:
        fc = self.family_class
        return fc.tag if fc else None

    def describe(self) -> dict:
        return {
            "q": self.q,
            "g1": str(self.g1) if self.g1 is not None else None,
            "g2": str(self.g2) if self.g2 is not None else None,
            "family_type": self.family_type,
        }

    def __repr__(self):
        return f"DrinfeldModule(phi_T = {self.phi_T})"


def horner_phi(phi_T: SkewPoly, a: Poly) -> SkewPoly:
    """phi_a for a = c_0 + T(c_1 + T(...)) by Horner composition with phi_T."""
    R = phi_T.ring
    acc = SkewPoly(R)
    for c in reversed(a.coeffs):
        acc = phi_T * acc + SkewPoly(R, [R.coerce(c) if R.kind == "A" else c])
    return acc


def phi_of(phi: DrinfeldModule, a: Poly) -> SkewPoly:
    """The skew polynomial phi_a over A."""
    return horner_phi(phi.phi_T, a)


GOOD = "good"


@dataclass
class ReducedModule:
    """phi with coefficients reduced modulo a prime."""

    prime: PrimeIdeal
    psi_T: SkewPoly
    reduction_type: str
    source: DrinfeldModule = field(repr=False)

    @property
    def residue_field(self):
        return self.prime.residue_field

    @property
    def q(self) -> int:
        return self.source.q

    @property
    def rank(self) -> int:
        return self.psi_T.degree

    def phi_of(self, a: Poly) -> SkewPoly:
        return horner_phi(self.psi_T, a)

    @property
    def is_good(self) -> bool:
        return self.reduction_type == GOOD


def reduce_at(phi: DrinfeldModule, P: PrimeIdeal) -> ReducedModule:
    """Reduce the coefficients of phi_T modulo P.

    The type is ``good`` when the leading coefficient stays nonzero; if it
    dies but some lower positive coefficient survives, the type is
    ``stable-of-rank-k``.
    """
    K = P.residue_field
    R = ring_K(K, phi.q)
    psi = phi.phi_T.map_coeffs(K.reduce, R)
    top = psi.degree
    if top == phi.rank:
        kind = GOOD
    elif 1 <= top < phi.rank:
        kind = f"stable-of-rank-{top}"
    else:
        kind = "other"
    return ReducedModule(P, psi, kind, phi)


class Ramified(ValueError):
    pass


def carlitz_frobenius(P: PrimeIdeal, a: Poly) -> Poly:
    """Image of Frob_P under the Carlitz character mod a: the monic generator of P mod a."""
    if (a % P.generator).is_zero():
        raise Ramified(f"ramified: {P} divides {a}")
    return P.generator % a
