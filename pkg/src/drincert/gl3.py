"""Group-theoretic checks on GL_3 over finite fields.

The maximal-subgroup sieve works on orders and boolean evidence alone.  The
brute-force part enumerates GL_3(F_q) for tiny prime q, with matrices
encoded as base-q integers (entry (i, j) is digit 3i + j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import backend
from .algebra import FiniteField, Poly, ResidueField, _prime_factors, prime_power

# -- orders -------------------------------------------------------------------


@dataclass(frozen=True)
class GroupOrder:
    value: int

    @property
    def factored(self) -> list[tuple[int, int]]:
        n, out = self.value, []
        for p in _prime_factors(n):
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        return out

    def __str__(self):
        return " * ".join(f"{p}^{k}" if k > 1 else str(p) for p, k in self.factored) or "1"


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def gu3_order(r: int) -> int:
    """|GU_3(r)| for the unitary group over F_{r^2}."""
    return r ** 3 * (r + 1) * (r * r - 1) * (r ** 3 + 1)


def _isqrt_exact(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


# groups in the special class, by their order in SL_3
PSL32_ORDER = 168
S_CLASS_ORDERS = {"3.A6": 1080, "3.A6.2_3": 2160, "3.A7": 7560}


def classical_orders(q: int) -> dict:
    """Orders of GL_3(F_q) and of the candidate overgroups used by the sieve."""
    prime_power(q)
    gl = gl_order(3, q)
    sl = gl // (q - 1)
    z = math.gcd(3, q - 1)
    r = _isqrt_exact(q)
    return {
        "GL3": gl,
        "SL3": sl,
        "PGL3": gl // (q - 1),
        "PSL3": sl // z,
        "GL1_wr_S3": (q - 1) ** 3 * 6,
        "GL1_q3": q ** 3 - 1,
        "GU3": gu3_order(r) if r is not None else None,
        "GO3": 2 * q * (q * q - 1),
        "3^(1+2).Sp2(3)": 2 ** 3 * 3 ** 4,
        "S": {"PSL3(2)": PSL32_ORDER, "PSL3(2)xZ3": 3 * PSL32_ORDER, **S_CLASS_ORDERS},
    }


# -- the sieve ------------------------------------------------------------------

EXCLUDED = "excluded"
NOT_APPLICABLE = "not-applicable"
FAILED = "FAILED"

CLASS_NAMES = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "S")


@dataclass(frozen=True)
class SieveEvidence:
    q_prime: int
    irreducible: bool
    divisor: int
    det_full: bool
    center_contained: bool


@dataclass
class ClassResult:
    name: str
    status: str
    reason: str
    data: dict = field(default_factory=dict)


@dataclass
class SieveVerdict:
    evidence: SieveEvidence
    classes: list

    @property
    def surjective(self) -> bool:
        return all(c.status in (EXCLUDED, NOT_APPLICABLE) for c in self.classes)

    @property
    def verdict(self) -> str:
        return "surjective" if self.surjective else "FAILED"

    def by_name(self, name: str) -> ClassResult:
        return next(c for c in self.classes if c.name == name)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "classes": [{"class": c.name, "status": c.status, "reason": c.reason, "data": c.data}
                        for c in self.classes],
        }


def _order_test(name: str, divisor: int, bound: int, label: str) -> ClassResult:
    data = {"bound": bound, "divisor": divisor}
    if bound % divisor:
        return ClassResult(name, EXCLUDED, f"{divisor} does not divide |{label}| = {bound}", data)
    return ClassResult(name, FAILED, f"{divisor} divides |{label}| = {bound}", data)


def _combine(name: str, parts: list[tuple[str, ClassResult]]) -> ClassResult:
    data = {k: {"status": r.status, "reason": r.reason, **r.data} for k, r in parts}
    statuses = [r.status for _, r in parts]
    if FAILED in statuses:
        bad = [k for k, r in parts if r.status == FAILED]
        return ClassResult(name, FAILED, "not excluded: " + ", ".join(bad), data)
    if all(s == NOT_APPLICABLE for s in statuses):
        return ClassResult(name, NOT_APPLICABLE, "no candidate subgroup", data)
    return ClassResult(name, EXCLUDED, "every candidate excluded", data)


def _c6_exponent(p: int) -> int | None:
    """Least e with p^e = 1 mod 3 (None in characteristic 3)."""
    if p == 3:
        return None
    return 1 if p % 3 == 1 else 2


def aschbacher_sieve(ev: SieveEvidence) -> SieveVerdict:
    """Try to exclude each class of maximal subgroups of GL_3(F_q') not containing SL_3.

    Order bounds include the scalars and any field automorphisms, so they
    are multiples of the true orders; failing divisibility still excludes.
    """
    qp, div = ev.q_prime, ev.divisor
    p, f = prime_power(qp)
    out = []

    out.append(ClassResult("C1", EXCLUDED if ev.irreducible else FAILED,
                           "irreducible action" if ev.irreducible else "irreducibility not established"))
    out.append(_order_test("C2", div, (qp - 1) ** 3 * 6, "GL1 wr S3"))
    out.append(_order_test("C3", div, 3 * (qp ** 3 - 1), "GL1(q'^3).3"))
    out.append(ClassResult("C4", NOT_APPLICABLE, "3 is not a product of two dimensions >= 2"))

    subs = []
    for k in range(1, f):
        if f % k == 0:
            q0 = p ** k
            bound = q0 ** 3 * (qp - 1) * (q0 ** 3 - 1) * (q0 ** 2 - 1)
            subs.append((f"q0={q0}", _order_test("C5", div, bound, f"<Z, GL3({q0})>")))
    out.append(_combine("C5", subs) if subs else
               ClassResult("C5", NOT_APPLICABLE, "q' is prime: no proper subfield"))

    if _c6_exponent(p) == f:
        out.append(_order_test("C6", div, 2 ** 3 * 3 ** 4 * (qp - 1), "Z.3^(1+2).Sp2(3)"))
    else:
        out.append(ClassResult("C6", NOT_APPLICABLE, "q' is not p^e with e least such that p^e = 1 mod 3"))

    out.append(ClassResult("C7", NOT_APPLICABLE, "3 is not a proper power"))

    c8 = [("symplectic", ClassResult("C8", NOT_APPLICABLE, "odd dimension"))]
    r = _isqrt_exact(qp) if f % 2 == 0 else None
    if r is not None:
        c8.append(("unitary", _order_test("C8", div, (qp - 1) * gu3_order(r), f"Z.GU3({r})")))
    else:
        c8.append(("unitary", ClassResult("C8", NOT_APPLICABLE, "q' is not a square")))
    c8.append(("orthogonal", _order_test("C8", div, 2 * qp * (qp * qp - 1) * (qp - 1), "Z.GO3(q')")))
    out.append(_combine("C8", c8))

    out.append(_sieve_S(ev))
    return SieveVerdict(ev, out)


def _sieve_S(ev: SieveEvidence) -> ClassResult:
    # orders are those of M cap SL_3, which must contain Z(SL_3)
    z = math.gcd(3, ev.q_prime - 1)
    groups = {"PSL3(2)xZ(SL3)": PSL32_ORDER * z, **S_CLASS_ORDERS}
    data = {"orders": groups}
    if not (ev.det_full and ev.center_contained):
        missing = [n for n, ok in (("det_full", ev.det_full), ("center_contained", ev.center_contained)) if not ok]
        return ClassResult("S", FAILED, "missing evidence: " + ", ".join(missing), data)
    hits = [n for n, o in groups.items() if o % ev.divisor == 0]
    data["divisible"] = hits
    if hits:
        return ClassResult("S", FAILED, f"{ev.divisor} divides the order of " + ", ".join(hits), data)
    return ClassResult("S", EXCLUDED, f"{ev.divisor} divides none of the candidate orders", data)


# -- brute force over GL_3(F_q), q prime ----------------------------------------------


def encode(rows, q: int) -> int:
    flat = [x % q for r in rows for x in r]
    return sum(c * q ** k for k, c in enumerate(flat))


def decode(code: int, q: int) -> list[list[int]]:
    flat = [(code // q ** k) % q for k in range(9)]
    return [flat[0:3], flat[3:6], flat[6:9]]


def det_code(code: int, q: int) -> int:
    (a, b, c), (d, e, f), (g, h, i) = decode(code, q)
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % q


def identity_code(q: int) -> int:
    return 1 + q ** 4 + q ** 8


def gl3_generators(q: int) -> list[int]:
    """Elementary transvections and diag(g, 1, 1) with g a primitive root."""
    gens = []
    for i in range(3):
        for j in range(3):
            if i != j:
                m = [[int(r == c) for c in range(3)] for r in range(3)]
                m[i][j] = 1
                gens.append(encode(m, q))
    if q > 2:
        g = next(x for x in range(2, q) if all(pow(x, (q - 1) // f, q) != 1 for f in _prime_factors(q - 1)))
        gens.append(encode([[g, 0, 0], [0, 1, 0], [0, 0, 1]], q))
    return gens


class _Group:
    """Multiplication helpers for codes over a fixed prime q."""

    def __init__(self, q: int):
        self.q = q
        self.one = identity_code(q)

    def mul(self, x: int, y: int) -> int:
        return backend.gl3_mul(x, y, self.q)

    def inv(self, x: int) -> int:
        prev, cur = self.one, x
        while cur != self.one:
            prev, cur = cur, self.mul(cur, x)
        return prev

    def closure(self, gens) -> frozenset:
        return frozenset(backend.gl3_closure(list(gens), self.q))

    def normal_closure(self, seeds, conj_gens, conj_invs) -> tuple[frozenset, list]:
        """Smallest subgroup containing seeds and stable under the given conjugations."""
        gens = list(dict.fromkeys(seeds)) or [self.one]
        while True:
            H = self.closure(gens)
            new = None
            for g, gi in zip(conj_gens, conj_invs):
                for h in gens:
                    c = self.mul(self.mul(g, h), gi)
                    if c not in H:
                        new = c
                        break
                if new is not None:
                    break
            if new is None:
                return H, gens
            gens.append(new)

    def derived(self, H: frozenset, gens: list) -> tuple[frozenset, list]:
        invs = [self.inv(g) for g in gens]
        comms = []
        for a, ai in zip(gens, invs):
            for b, bi in zip(gens, invs):
                c = self.mul(self.mul(ai, bi), self.mul(a, b))
                if c != self.one:
                    comms.append(c)
        if not comms:
            return frozenset([self.one]), [self.one]
        return self.normal_closure(comms, gens, invs)


@dataclass
class NormalSubgroupReport:
    q: int
    passed: bool
    group_order: int
    class_count: int
    class_sizes: list
    normal_subgroups: list  # dicts: order, solvable, in_center, is_center, is_SL3
    center_order: int
    sl3_normal_nonsolvable: bool


DEFAULT_CAP = 200_000


def normal_solvable_center_check(q: int, cap: int = DEFAULT_CAP) -> NormalSubgroupReport:
    """Enumerate the normal subgroups of GL_3(F_q) and test that the solvable ones are central.

    Normal subgroups are exactly the joins of normal closures of conjugacy
    classes, so the lattice is built from class closures under joins.
    """
    p, e = prime_power(q)
    if e != 1:
        raise ValueError("brute force supports prime q only")
    order = gl_order(3, q)
    if order > cap:
        raise ValueError(f"resource cap exceeded: |GL3(F_{q})| = {order} > cap {cap}")
    G = _Group(q)
    gens = gl3_generators(q)
    ginv = [G.inv(g) for g in gens]
    elements = G.closure(gens)
    if len(elements) != order:
        raise AssertionError("generators do not generate GL3")

    # conjugacy classes by orbit search under conjugation by generators
    seen: set = set()
    classes = []
    for x in sorted(elements):
        if x in seen:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g, gi in zip(gens, ginv):
                z = G.mul(G.mul(g, y), gi)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        seen |= orbit
        classes.append((x, len(orbit)))
    class_sizes = sorted(n for _, n in classes)

    # normal closures of classes, then joins until stable
    subgroups: dict[frozenset, list] = {frozenset([G.one]): [G.one]}
    for rep, _ in classes:
        H, hg = G.normal_closure([rep], gens, ginv)
        subgroups.setdefault(H, hg)
    changed = True
    while changed:
        changed = False
        items = list(subgroups.items())
        for i, (A, ag) in enumerate(items):
            for B, bg in items[i + 1:]:
                if A <= B or B <= A:
                    continue
                J = G.closure(ag + bg)
                if J not in subgroups:
                    subgroups[J] = ag + bg
                    changed = True

    center = frozenset(encode([[c, 0, 0], [0, c, 0], [0, 0, c]], q) for c in range(1, q))
    sl3 = frozenset(x for x in elements if det_code(x, q) == 1)
    report = []
    ok = True
    sl3_flag = False
    for H in sorted(subgroups, key=lambda s: (len(s), min(s))):
        hg = subgroups[H]
        cur, cg = H, hg
        solvable = len(cur) == 1
        while not solvable:
            nxt, ng = G.derived(cur, cg)
            if nxt == cur:
                break
            cur, cg = nxt, ng
            solvable = len(cur) == 1
        in_center = H <= center
        if solvable and not in_center:
            ok = False
        if H == sl3 and not solvable:
            sl3_flag = True
        report.append({
            "order": len(H),
            "solvable": solvable,
            "in_center": in_center,
            "is_center": H == center,
            "is_SL3": H == sl3,
        })
    ok = ok and any(r["is_center"] and r["solvable"] for r in report) and sl3_flag
    return NormalSubgroupReport(q, ok, order, len(classes), class_sizes, report, len(center), sl3_flag)


# -- subrings of A/a ------------------------------------------------------------------


@dataclass
class Subring:
    modulus: Poly
    basis: list  # Polys reduced mod the modulus, F_p-independent
    ambient_dimension: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.modulus.field.p ** self.dimension

    @property
    def is_full(self) -> bool:
        return self.dimension == self.ambient_dimension

    def elements(self):
        F = self.modulus.field
        p = F.p
        zero = Poly(F)
        for k in range(self.size):
            acc = zero
            for b in self.basis:
                k, c = divmod(k, p)
                if c:
                    acc = acc + b * Poly(F, (F.from_int(c),))
            yield acc

    def __contains__(self, x: Poly) -> bool:
        ext = _Span(self.modulus)
        for b in self.basis:
            ext.add(b)
        return not ext.add(x % self.modulus)


class _Span:
    """Incremental F_p-span of residues mod a polynomial, in prime coordinates."""

    def __init__(self, modulus: Poly):
        self.modulus = modulus
        F = modulus.field
        self.F = F
        self.n = F.prime_degree * modulus.degree
        self.rows: dict[int, list[int]] = {}  # pivot -> row
        self.members: list[Poly] = []

    def coords(self, x: Poly) -> list[int]:
        F, d = self.F, self.modulus.degree
        out = []
        for i in range(d):
            out.extend(F.prime_coords(x[i]))
        return out

    def add(self, x: Poly) -> bool:
        """Insert x; True when it enlarged the span."""
        p = self.F.p
        v = self.coords(x)
        for piv in sorted(self.rows):
            if v[piv]:
                r = self.rows[piv]
                c = v[piv]
                v = [(a - c * b) % p for a, b in zip(v, r)]
        lead = next((i for i, a in enumerate(v) if a), None)
        if lead is None:
            return False
        inv = pow(v[lead], -1, p)
        v = [(a * inv) % p for a in v]
        for piv, r in self.rows.items():
            if r[lead]:
                c = r[lead]
                self.rows[piv] = [(a - c * b) % p for a, b in zip(r, v)]
        self.rows[lead] = v
        self.members.append(x)
        return True


def subring_generated(S, modulus: Poly) -> Subring:
    """Closure of S together with 0 and 1 under addition and multiplication in A/(modulus)."""
    F = modulus.field
    span = _Span(modulus)
    span.add(Poly(F, (1,)))
    for s in S:
        span.add(s % modulus)
    done = 0
    while done < len(span.members):
        # products of the newest members with everything seen so far
        new_start = len(span.members)
        for i in range(done, new_start):
            for j in range(0, i + 1):
                span.add((span.members[i] * span.members[j]) % modulus)
        done = new_start
    return Subring(modulus, list(span.members), span.n)


# -- field isomorphisms and the trace/det coset test -----------------------------------


def _embed_base(F1: ResidueField, F2: ResidueField, su: int) -> list[int]:
    """Images in F2 of the F_q elements of F1 when the F_q generator goes to su."""
    Fq = F1.base
    out = []
    for a in Fq.elements():
        acc = 0
        for k, c in enumerate(Fq.prime_coords(a)):
            if c:
                acc = F2.add(acc, F2.mul(F2.from_int(c), F2.pow(su, k)))
        out.append(acc)
    return out


def _roots(F: FiniteField, coeffs) -> list[int]:
    out = []
    for x in F.elements():
        acc = 0
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, x), c)
        if acc == 0:
            out.append(x)
    return out


def field_isomorphisms(F1: ResidueField, F2: ResidueField) -> list[list[int]]:
    """Every ring isomorphism F1 -> F2, each as a lookup table on codes."""
    if F1.order != F2.order:
        return []
    Fq = F1.base
    if Fq is not F2.base:
        raise ValueError("residue fields over different coefficient fields")
    Fp_in_F2 = [F2.from_int(k) for k in range(F2.p)]
    if Fq.base is None:
        u_images = [None]
    else:
        u_images = _roots(F2, [Fp_in_F2[c] for c in Fq.modulus])
    out = []
    for su in u_images:
        base = list(range(Fq.order)) if su is None else _embed_base(F1, F2, su)
        gen1 = [base[c] for c in F1.ideal.generator.coeffs]
        for st in _roots(F2, gen1):
            table = []
            for x in F1.elements():
                acc = 0
                for c in reversed(F1.digits(x)):
                    acc = F2.add(F2.mul(acc, st), base[c])
                table.append(acc)
            if len(set(table)) == F2.order:
                out.append(table)
    return out


def _scalar_match(sigma_P1, P2, F2: FiniteField) -> list[int]:
    """lambda in F2^x with sigma(P1) equal to the characteristic polynomial of lambda * M2."""
    out = []
    for lam in F2.units():
        if all(sigma_P1[k] == F2.mul(F2.pow(lam, 3 - k), P2[k]) for k in range(3)):
            out.append(lam)
    return out


@dataclass
class CosetTest:
    status: str  # "refuted", "consistent", "not-applicable"
    lambdas: dict = field(default_factory=dict)  # sigma index -> matching lambdas

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"


def coset_trace_test(P1, F1: ResidueField, P2, F2: ResidueField, sigmas=None) -> CosetTest:
    """Decide whether sigma(P1) can be the characteristic polynomial of lambda * M2.

    P1 holds the coefficients (lowest first, monic cubic) of the inverse
    Frobenius on the first side, P2 those of Frobenius on the second side.
    The scenario is refuted when no isomorphism sigma and no lambda fit.
    """
    if F1.order != F2.order:
        return CosetTest("not-applicable")
    if sigmas is None:
        sigmas = field_isomorphisms(F1, F2)
    lambdas = {}
    for i, tab in enumerate(sigmas):
        lambdas[i] = _scalar_match([tab[c] for c in P1], P2, F2)
    status = "refuted" if all(not v for v in lambdas.values()) else "consistent"
    return CosetTest(status, lambdas)
