"""Irreducibility certificates for the torsion modules phi[l] of the family.

At l = (T) the Frobenius characteristic polynomials reduce to cubics over
F_q of the form eta(x) + c; one irreducible cubic among them rules out any
invariant subspace.  At l != (T) a reducible module would give every
Frobenius polynomial a root following one of two uniform patterns, which
is refuted by exhibiting a failing prime for every candidate character
value zeta.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FiniteField, Poly, PrimeIdeal, is_irreducible
from .drinfeld import TYPE1, TYPE2, DrinfeldModule
from .frobenius import charpoly_mod, frob_charpoly


class IrreducibilityFailure(RuntimeError):
    pass


@dataclass
class IrredCertificate:
    ideal: PrimeIdeal
    method: str  # "eta-collision" or "zeta-scan"
    witness: dict = field(default_factory=dict)
    verified: bool = False


def _eval_codes(F: FiniteField, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def is_permutation_poly(f: Poly) -> bool:
    """Whether x -> f(x) permutes the coefficient field (exhaustive)."""
    F = f.field
    return len({f(x) for x in F.elements()}) == F.order


def ms87_criterion(f: Poly) -> bool:
    """Cubic permutation criterion: a2^2 = 3 a3 a1 and q = 2 mod 3 (p != 3)."""
    F = f.field
    if F.p == 3:
        raise ValueError("criterion requires p ≠ 3")
    if f.degree != 3:
        raise ValueError("criterion applies to cubics")
    a0, a1, a2, a3 = (f[i] for i in range(4))
    lhs = F.mul(a2, a2)
    rhs = F.mul(F.from_int(3), F.mul(a3, a1))
    return lhs == rhs and F.order % 3 == 2


def eta_polynomial(phi: DrinfeldModule) -> Poly:
    """x^3 + x^2 + x (Type 1) or x^3 + x^2 (Type 2)."""
    F = phi.field
    tag = phi.family_type
    if tag == TYPE1:
        return Poly(F, (0, 1, 1, 1))
    if tag == TYPE2:
        return Poly(F, (0, 0, 1, 1))
    raise ValueError("module is not in the family")


def irred_at_T(phi: DrinfeldModule) -> IrredCertificate:
    """Certificate for l = (T): a collision of eta and a c with eta(x) + c irreducible."""
    F = phi.field
    T = Poly.T(F)
    eta = eta_polynomial(phi)
    vals = [eta(x) for x in F.elements()]
    collision = next(((x1, x2) for x1 in F.elements() for x2 in range(x1 + 1, F.order)
                      if vals[x1] == vals[x2]), None)
    image = set(vals)
    chosen = None
    for c in F.units():
        if F.neg(c) not in image:
            chosen = c
            break
    if chosen is None:
        raise IrreducibilityFailure("irreducibility certificate failed")
    m_c = eta + Poly(F, (chosen,))
    no_root = all(m_c(x) != 0 for x in F.elements())
    irreducible = is_irreducible(m_c)
    # the cubic is the Frobenius polynomial at (T - c) reduced mod T
    P = frob_charpoly(phi, PrimeIdeal(T - Poly(F, (chosen,))))
    reduced = charpoly_mod(P, T)
    matches = list(reduced.coeffs) == [Poly(F, (m_c[i],)) for i in range(4)]
    ok = collision is not None and no_root and irreducible and matches
    witness = {
        "eta": str(eta).replace("T", "x"),
        "collision": [F.format(collision[0]), F.format(collision[1])] if collision else None,
        "c": F.format(chosen),
        "cubic": str(m_c).replace("T", "x"),
        "cubic_has_no_root": no_root,
        "cubic_irreducible": irreducible,
        "cubic_is_frobenius_mod_T": matches,
    }
    return IrredCertificate(PrimeIdeal(T), "eta-collision", witness, ok)


def degree_one_primes(F: FiniteField, exclude=()) -> list[PrimeIdeal]:
    """(T - c) for c in F_q^x, minus the excluded primes."""
    T = Poly.T(F)
    ex = {P.generator for P in exclude}
    out = []
    for c in F.units():
        P = PrimeIdeal(T - Poly(F, (c,)))
        if P.generator not in ex:
            out.append(P)
    return out


def irred_zeta_scan(phi: DrinfeldModule, L: PrimeIdeal, max_degree: int = 3) -> IrredCertificate:
    """Refute both one-dimensional patterns for every zeta in F_l^x.

    Pattern A needs zeta^{-1} * P mod l to be a root of the Frobenius
    polynomial mod l at every degree-one prime P; pattern B needs zeta.
    """
    F = phi.field
    if L.is_T():
        raise ValueError("use irred_at_T for l = (T)")
    if L.degree > max_degree:
        raise ValueError(f"deg l = {L.degree} exceeds the scan cap {max_degree}")
    primes = degree_one_primes(F, exclude=[L])
    if len(primes) < 3:
        raise ValueError("fewer than 3 usable degree-one primes")
    FL = L.residue_field
    cubics = []
    for P in primes:
        cp = charpoly_mod(frob_charpoly(phi, P), L).in_field(L)
        cubics.append((P, FL.reduce(P.generator), cp))
    table = []
    all_fail = True
    for zeta in FL.units():
        zinv = FL.inv(zeta)
        row = {"zeta": FL.format(zeta)}
        for name in ("A", "B"):
            fail = None
            for P, pbar, cp in cubics:
                root = FL.mul(zinv, pbar) if name == "A" else zeta
                value = _eval_codes(FL, cp, root)
                if value != 0:
                    fail = (P, root, value)
                    break
            if fail is None:
                all_fail = False
                row[name] = None
            else:
                row[name] = str(fail[0])
                row[name + "_value"] = FL.format(fail[2])
        table.append(row)
    witness = {"primes": [str(P) for P in primes], "units_scanned": FL.order - 1, "table": table}
    return IrredCertificate(L, "zeta-scan", witness, all_fail)


def verify_zeta_table(phi: DrinfeldModule, cert: IrredCertificate) -> bool:
    """Re-evaluate each recorded failing prime and confirm a nonzero value."""
    L = cert.ideal
    FL = L.residue_field
    F = phi.field
    by_name = {str(P): P for P in degree_one_primes(F, exclude=[L])}
    for zeta, row in zip(FL.units(), cert.witness["table"]):
        for name in ("A", "B"):
            if row.get(name) is None:
                return False
            P = by_name[row[name]]
            cp = charpoly_mod(frob_charpoly(phi, P), L).in_field(L)
            pbar = FL.reduce(P.generator)
            root = FL.mul(FL.inv(zeta), pbar) if name == "A" else zeta
            if _eval_codes(FL, cp, root) == 0:
                return False
    return True


def certify_irreducible(phi: DrinfeldModule, L: PrimeIdeal, max_degree: int = 3) -> IrredCertificate:
    if L.is_T():
        return irred_at_T(phi)
    return irred_zeta_scan(phi, L, max_degree)
