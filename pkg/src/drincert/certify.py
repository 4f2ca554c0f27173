"""Per-prime and pairwise surjectivity certificates.

A certificate is a list of named checks, each with a status:

* ``verified``: recomputed here from exact data,
* ``cited``: a step that rests on a published theorem, not recomputed,
* ``failed``: the computation did not confirm the needed fact,
* ``not-applicable``: the check has no content in this situation.

A verdict is ``surjective`` only when no check failed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .algebra import FiniteField, Poly, PrimeIdeal, enum_primes, prime_power
from .drinfeld import NOT_IN_FAMILY, DrinfeldModule
from .frobenius import CharpolyDegenerate, charpoly_mod, frob_charpoly
from .gl3 import SieveEvidence, aschbacher_sieve, coset_trace_test, field_isomorphisms, subring_generated
from .irred import certify_irreducible, degree_one_primes, verify_zeta_table
from .valuation import inertia_order, nonscalar_witness_at_T

VERIFIED = "verified"
CITED = "cited"
FAILED = "failed"
NOT_APPLICABLE = "not-applicable"

SURJECTIVE = "surjective"

DEFAULT_MAX_DEGREE = 3
DEFAULT_PAIR_DEGREE = 2


@dataclass
class Check:
    name: str
    status: str
    paper_anchor: str
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAILED

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "paper_anchor": self.paper_anchor, "data": self.data}


def _verdict(checks: list[Check]) -> tuple[str, str | None]:
    bad = next((c for c in checks if not c.ok), None)
    if bad is None:
        return SURJECTIVE, None
    return "failed", f"{bad.name} ({bad.paper_anchor})"


@dataclass
class Certificate:
    module: dict
    ideal: PrimeIdeal
    checks: list
    verdict: str
    reason: str | None = None
    mod_l_verdict: str | None = None

    @property
    def surjective(self) -> bool:
        return self.verdict == SURJECTIVE

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        return {
            "ideal": str(self.ideal),
            "degree": self.ideal.degree,
            "verdict": self.verdict,
            "reason": self.reason,
            "mod_l_verdict": self.mod_l_verdict,
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass
class PairCertificate:
    ideals: tuple
    checks: list
    verdict: str
    reason: str | None = None

    @property
    def surjective(self) -> bool:
        return self.verdict == SURJECTIVE

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        return {
            "ideals": [str(i) for i in self.ideals],
            "verdict": self.verdict,
            "reason": self.reason,
            "checks": [c.to_dict() for c in self.checks],
        }


# -- scope --------------------------------------------------------------------------


def scope_problem(phi: DrinfeldModule) -> str | None:
    """Why phi lies outside the range of the certified argument, if it does."""
    p, _ = prime_power(phi.q)
    if p == 2:
        return "q must be odd"
    if phi.q < 7:
        return "q must be at least 7"
    return None


# -- determinant images ------------------------------------------------------------


def _sample_primes(F: FiniteField, exclude, max_degree: int = 2) -> list[PrimeIdeal]:
    """Primes of good reduction off the excluded set, in enumeration order."""
    T = PrimeIdeal(Poly.T(F))
    return enum_primes(F, max_degree, exclude=list(exclude) + [T])


def _det_mod(phi: DrinfeldModule, P: PrimeIdeal, modulus: Poly) -> Poly:
    return charpoly_mod(frob_charpoly(phi, P), modulus).det


def unit_coordinates(a: Poly, L: PrimeIdeal, power: int) -> tuple:
    """Coordinates of a unit of A/(l^power) for power 1 or 2.

    (A/l^2)^x is C_(Q-1) x (F_Q, +): the first factor is read off through
    the discrete log mod l, the second through (a^(Q-1) - 1)/l mod l.
    """
    FL = L.residue_field
    Q = FL.order
    x = FL.reduce(a)
    if x == 0:
        raise ValueError("not a unit")
    log = FL.log(x)
    if power == 1:
        return (log, ())
    if power != 2:
        raise ValueError("levels l and l^2 only")
    g = L.generator
    m = g * g
    w = (a % m).powmod(Q - 1, m) - Poly(FL.base, (1,))
    b, r = divmod(w, g)
    if not r.is_zero():
        raise ArithmeticError("a^(Q-1) is not 1 mod l")
    return (log, tuple(FL.prime_coords(FL.reduce(b))))


def _rank_fp(vectors, p: int) -> int:
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def generates_units(coords, L: PrimeIdeal, power: int) -> bool:
    """Whether elements with these coordinates generate (A/l^power)^x."""
    FL = L.residue_field
    n = FL.order - 1
    g = n
    for log, _ in coords:
        g = math.gcd(g, log)
    if g != 1:
        return False
    if power == 1:
        return True
    return _rank_fp([v for _, v in coords], FL.p) == FL.prime_degree


def generates_product(coords, orders) -> bool:
    """Whether vectors of logs generate Z/n1 x Z/n2 (gcd of 2x2 minors is 1)."""
    n1, n2 = orders
    rows = [tuple(c) for c in coords] + [(n1, 0), (0, n2)]
    g = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            a, b = rows[i]
            c, d = rows[j]
            g = math.gcd(g, a * d - b * c)
            if g == 1:
                return True
    return g == 1


def det_full_check(phi: DrinfeldModule, L: PrimeIdeal, power: int = 1) -> Check:
    """Sample Frobenius determinants until they generate (A/l^power)^x."""
    g = L.generator ** power
    coords, used = [], []
    ok = False
    for P in _sample_primes(phi.field, [L]):
        d = _det_mod(phi, P, g)
        coords.append(unit_coordinates(d, L, power))
        used.append(str(P))
        if generates_units(coords, L, power):
            ok = True
            break
    FL = L.residue_field
    order = (FL.order - 1) * (FL.order if power == 2 else 1)
    name = "det_full" if power == 1 else "lifting.det_full_l2"
    return Check(name, VERIFIED if ok else FAILED,
                 "determinant equals the Carlitz character, whose image is all units",
                 {"group_order": order, "sampled_primes": used,
                  "coordinates": [[c[0], list(c[1])] for c in coords]})


# -- mod-l ------------------------------------------------------------------------


def _family_check(phi: DrinfeldModule) -> Check:
    fc = phi.family_class
    data = {"family_type": phi.family_type}
    if fc is not None:
        data.update({"gcd_g1": str(fc.gcd_g1), "gcd_g2": str(fc.gcd_g2)})
    ok = fc is not None and fc.in_family
    return Check("family", VERIFIED if ok else FAILED, "gcd conditions defining Type 1 and Type 2", data)


def _irreducible_check(phi: DrinfeldModule, L: PrimeIdeal, max_degree: int) -> Check:
    cert = certify_irreducible(phi, L, max_degree)
    ok = cert.verified
    if ok and cert.method == "zeta-scan":
        ok = verify_zeta_table(phi, cert)
    return Check("irreducible", VERIFIED if ok else FAILED,
                 "irreducibility of the torsion module via Frobenius polynomials",
                 {"method": cert.method, **cert.witness})


def _inertia_check(phi: DrinfeldModule, L: PrimeIdeal) -> Check:
    rep = inertia_order(phi, L)
    qp = phi.q ** L.degree
    ok = rep.identity_check and rep.order_divisor == qp * qp
    return Check("inertia_divisor", VERIFIED if ok else FAILED,
                 "|A/l|^2 divides the order of the inertia image at (T)",
                 {"divisor": rep.order_divisor, "z_valuation": str(rep.z_valuation), **rep.details})


def certify_mod_l(phi: DrinfeldModule, L: PrimeIdeal, max_degree: int = DEFAULT_MAX_DEGREE) -> Certificate:
    """Mod-l surjectivity certificate."""
    desc = phi.describe()
    fam = _family_check(phi)
    if not fam.ok:
        return Certificate(desc, L, [fam], "failed", "family")
    if L.degree > max_degree:
        return Certificate(desc, L, [fam], "out-of-scope", f"deg l = {L.degree} exceeds cap {max_degree}")
    checks = [fam]
    checks.append(det_full_check(phi, L, 1))
    checks.append(_irreducible_check(phi, L, max_degree))
    checks.append(_inertia_check(phi, L))
    checks.append(Check("center_contained", CITED,
                        "a maximal subgroup missing the center would contain a Sylow p-subgroup and SL_3",
                        {}))
    qp = phi.q ** L.degree
    by = {c.name: c for c in checks}
    ev = SieveEvidence(
        q_prime=qp,
        irreducible=by["irreducible"].status == VERIFIED,
        divisor=by["inertia_divisor"].data["divisor"] if by["inertia_divisor"].status == VERIFIED else 1,
        det_full=by["det_full"].status == VERIFIED,
        center_contained=by["center_contained"].status in (VERIFIED, CITED),
    )
    sv = aschbacher_sieve(ev)
    checks.append(Check("sieve", VERIFIED if sv.surjective else FAILED,
                        "exclusion of every class of maximal subgroups", sv.to_dict()))
    verdict, reason = _verdict(checks)
    cert = Certificate(desc, L, checks, verdict, reason, verdict)
    return _apply_scope(phi, cert)


def _apply_scope(phi: DrinfeldModule, cert: Certificate) -> Certificate:
    why = scope_problem(phi)
    if why is not None and cert.verdict == SURJECTIVE:
        cert.verdict = "out-of-scope"
        cert.reason = why
    return cert


# -- l-adic -----------------------------------------------------------------------


def certify_l_adic(phi: DrinfeldModule, L: PrimeIdeal, max_degree: int = DEFAULT_MAX_DEGREE,
                   base: Certificate | None = None) -> Certificate:
    """Adds the lifting conditions to a mod-l certificate."""
    base = base or certify_mod_l(phi, L, max_degree)
    checks = list(base.checks)
    if base.mod_l_verdict != SURJECTIVE:
        return Certificate(base.module, L, checks, base.verdict, base.reason, base.mod_l_verdict)
    qp = phi.q ** L.degree
    checks.append(Check("lifting.residue_ge_4", VERIFIED if qp >= 4 else FAILED,
                        "residue field has at least 4 elements", {"residue_size": qp}))
    checks.append(Check("lifting.mod_l_surjective", VERIFIED, "surjectivity modulo l",
                        {"mod_l_verdict": base.mod_l_verdict}))
    if L.is_T():
        w = nonscalar_witness_at_T(phi)
        checks.append(Check("lifting.nonscalar_witness", VERIFIED if w["verified"] else FAILED,
                            "non-scalar element of the image mod (T)^2 trivial mod (T)", w))
    else:
        inertia = base.check("inertia_divisor").data
        checks.append(Check("lifting.nonscalar_witness", CITED,
                            "inertia at (T) acts by unipotent block matrices on phi[l^2]",
                            {"inertia_divisor_mod_l": inertia["divisor"]}))
    checks.append(det_full_check(phi, L, 2))
    checks.append(Check("lifting.det_full_all_levels", CITED,
                        "l-adic determinant surjectivity beyond level l^2", {}))
    checks.append(Check("lifting.criterion", CITED,
                        "open subgroup criterion: mod-l image, |F_l| >= 4, determinant and a non-scalar lift", {}))
    verdict, reason = _verdict(checks)
    cert = Certificate(base.module, L, checks, verdict, reason, base.mod_l_verdict)
    return _apply_scope(phi, cert)


# -- pairs ------------------------------------------------------------------------


def certify_pair(phi: DrinfeldModule, L1: PrimeIdeal, L2: PrimeIdeal,
                 cert1: Certificate | None = None, cert2: Certificate | None = None) -> PairCertificate:
    """Surjectivity onto GL_3(A/l1 l2) from the two factors."""
    if L1 == L2:
        raise ValueError("pair needs two distinct primes")
    cert1 = cert1 or certify_mod_l(phi, L1)
    cert2 = cert2 or certify_mod_l(phi, L2)
    F = phi.field
    a = L1.generator * L2.generator
    checks = []
    both = cert1.mod_l_verdict == SURJECTIVE and cert2.mod_l_verdict == SURJECTIVE
    checks.append(Check("both_mod_l_surjective", VERIFIED if both else FAILED, "surjectivity modulo each factor",
                        {"verdicts": [cert1.mod_l_verdict, cert2.mod_l_verdict]}))

    # (1) determinant onto (A/a)^x through CRT coordinates
    F1, F2 = L1.residue_field, L2.residue_field
    coords, used, ok = [], [], False
    for P in _sample_primes(F, [L1, L2]):
        d = _det_mod(phi, P, a)
        coords.append((F1.log(F1.reduce(d)), F2.log(F2.reduce(d))))
        used.append(str(P))
        if generates_product(coords, (F1.order - 1, F2.order - 1)):
            ok = True
            break
    checks.append(Check("det_full", VERIFIED if ok else FAILED, "determinant onto (A/a)^x",
                        {"group_order": (F1.order - 1) * (F2.order - 1), "sampled_primes": used,
                         "coordinates": [list(c) for c in coords]}))

    # (2) commutators: follows from the factors
    checks.append(Check("commutator_surjective", CITED,
                        "commutator subgroup maps onto SL_3 of each factor", {}))

    # (3) subring generated by tr^3/det and det/tr^3
    samples = []
    used = []
    for P in degree_one_primes(F, exclude=[L1, L2]):
        cp = charpoly_mod(frob_charpoly(phi, P), a)
        for val in (cp.tr3_over_det(), cp.det_over_tr3()):
            if val is not None:
                samples.append(val)
        used.append(str(P))
    R = subring_generated(samples, a)
    checks.append(Check("subring_full", VERIFIED if R.is_full else FAILED,
                        "tr^3/det and det/tr^3 generate A/a as a ring",
                        {"sampled_primes": used, "dimension": R.dimension, "ambient_dimension": R.ambient_dimension}))

    # second-type isomorphisms between the two factors
    same = F1.order == F2.order
    if not same:
        checks.append(Check("second_type_refuted", NOT_APPLICABLE,
                            "no field isomorphism between residue fields of different size", {}))
    else:
        sigmas = field_isomorphisms(F1, F2)
        witnesses = {}
        for P in degree_one_primes(F, exclude=[L1, L2]):
            todo = [i for i in range(len(sigmas)) if i not in witnesses]
            if not todo:
                break
            cp = frob_charpoly(phi, P)
            P1 = charpoly_mod(cp, L1.generator).inverse().in_field(L1)
            P2 = charpoly_mod(cp, L2.generator).in_field(L2)
            res = coset_trace_test(P1, F1, P2, F2, [sigmas[i] for i in todo])
            for k, i in enumerate(todo):
                if not res.lambdas[k]:
                    witnesses[i] = str(P)
        ok = len(witnesses) == len(sigmas) and sigmas
        checks.append(Check("second_type_refuted", VERIFIED if ok else FAILED,
                            "no isomorphism of the second type is compatible with Frobenius",
                            {"isomorphisms": len(sigmas),
                             "refuting_prime": {str(i): witnesses.get(i) for i in range(len(sigmas))}}))
    checks.append(Check("equal_residue_note", VERIFIED, "size comparison of the residue fields",
                        {"sizes": [F1.order, F2.order], "equal": same}))
    checks.append(Check("product_surjective", CITED,
                        "properties of the determinant, commutators and trace ring give GL_3(A/a)", {}))
    verdict, reason = _verdict(checks)
    out = PairCertificate((L1, L2), checks, verdict, reason)
    why = scope_problem(phi)
    if why is not None and out.verdict == SURJECTIVE:
        out.verdict, out.reason = "out-of-scope", why
    return out


# -- report ------------------------------------------------------------------------


@dataclass
class ReportConfig:
    q: int
    g1: Poly
    g2: Poly
    field: FiniteField
    max_degree: int = 2
    pairs: bool = False
    pair_degree: int = DEFAULT_PAIR_DEGREE


@dataclass
class Report:
    meta: dict
    certificates: list
    pairs: list

    @property
    def all_surjective(self) -> bool:
        return all(c.surjective for c in self.certificates) and all(p.surjective for p in self.pairs)

    def to_dict(self) -> dict:
        return {
            "meta": self.meta,
            "certificates": [c.to_dict() for c in self.certificates],
            "pairs": [p.to_dict() for p in self.pairs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        m = self.meta
        lines = [f"q = {m['q']}  g1 = {m['g1']}  g2 = {m['g2']}  type = {m['family_type']}", ""]
        lines.append("per-prime certificates")
        for c in self.certificates:
            bad = [ch.name for ch in c.checks if ch.status == FAILED]
            lines.append(f"  {str(c.ideal):<22} {c.verdict:<14}" + (" failed: " + ", ".join(bad) if bad else ""))
            sv = next((ch for ch in c.checks if ch.name == "sieve"), None)
            if sv is not None:
                row = " ".join(f"{k['class']}:{_short(k['status'])}" for k in sv.data["classes"])
                lines.append(f"      sieve {row}")
        if self.pairs:
            lines.append("")
            lines.append("pairs")
            for p in self.pairs:
                a, b = p.ideals
                lines.append(f"  {str(a)} x {str(b)}: {p.verdict}")
        lines.append("")
        lines.append(f"adelic: {m['adelic']}")
        n_ok = sum(c.surjective for c in self.certificates)
        lines.append(f"{n_ok}/{len(self.certificates)} primes surjective"
                     + (f", {sum(p.surjective for p in self.pairs)}/{len(self.pairs)} pairs" if self.pairs else ""))
        return "\n".join(lines) + "\n"


def _short(status: str) -> str:
    return {"excluded": "x", "not-applicable": "-", "FAILED": "!"}.get(status, status)


def run_report(cfg: ReportConfig) -> Report:
    """Certificates for every prime of degree <= max_degree, plus pairs when asked."""
    phi = DrinfeldModule.family(cfg.field, cfg.g1, cfg.g2)
    primes = enum_primes(cfg.field, cfg.max_degree)
    certs = []
    for L in primes:
        certs.append(_safe_l_adic(phi, L, cfg.max_degree))
    pairs = []
    if cfg.pairs and phi.family_type != NOT_IN_FAMILY:
        small = [c for c in certs if c.ideal.degree <= cfg.pair_degree]
        for i, c1 in enumerate(small):
            for c2 in small[i + 1:]:
                pairs.append(certify_pair(phi, c1.ideal, c2.ideal, c1, c2))
    meta = {
        "q": cfg.q,
        "field": cfg.field.as_dict(),
        "g1": str(cfg.g1),
        "g2": str(cfg.g2),
        "family_type": phi.family_type,
        "max_degree": cfg.max_degree,
        "pair_degree": cfg.pair_degree if cfg.pairs else None,
        "prime_count": len(primes),
        "scope": scope_problem(phi) or "in scope",
        "adelic": "not computed; pairwise certificates plus a cited criterion for products of primes",
    }
    return Report(meta, certs, pairs)


def _safe_l_adic(phi: DrinfeldModule, L: PrimeIdeal, max_degree: int) -> Certificate:
    # a failing sub-computation marks the certificate, it never aborts the batch
    try:
        return certify_l_adic(phi, L, max_degree)
    except (CharpolyDegenerate, ArithmeticError, ValueError) as exc:
        chk = Check("internal", FAILED, "computation error", {"error": str(exc)})
        return Certificate(phi.describe(), L, [chk], "failed", f"internal: {exc}", "failed")
