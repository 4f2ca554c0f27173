from __future__ import annotations

import dataclasses
import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drincert import _fallback
from drincert import gl3 as gl3_mod
from drincert.algebra import GF, Poly, PrimeIdeal, enum_primes, parse_poly
from drincert.drinfeld import DrinfeldModule
from drincert.frobenius import charpoly_mod, frob_charpoly
from drincert.gl3 import (
    CLASS_NAMES,
    EXCLUDED,
    FAILED,
    NOT_APPLICABLE,
    GroupOrder,
    SieveEvidence,
    aschbacher_sieve,
    classical_orders,
    coset_trace_test,
    field_isomorphisms,
    gl_order,
    normal_solvable_center_check,
    subring_generated,
)

# -- orders ---------------------------------------------------------------------------------


def test_group_order_factored():
    g = GroupOrder(gl_order(3, 7))
    assert math.prod(p ** k for p, k in g.factored) == g.value
    assert str(GroupOrder(168)) == "2^3 * 3 * 7"
    assert dict(g.factored)[7] == 3


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49])
def test_classical_orders_consistency(q):
    t = classical_orders(q)
    gl = t["GL3"]
    assert gl == (q ** 3 - 1) * (q ** 3 - q) * (q ** 3 - q * q)
    assert t["SL3"] * (q - 1) == gl
    assert t["PSL3"] * math.gcd(3, q - 1) == t["SL3"]
    for key in ("GL1_wr_S3", "GL1_q3"):
        assert gl % t[key] == 0, key
    if q % 2:
        assert gl % t["GO3"] == 0
    r = math.isqrt(q)
    if r * r == q:
        assert gl % t["GU3"] == 0
    else:
        assert t["GU3"] is None
    assert t["3^(1+2).Sp2(3)"] == 648


def _count_orthonormal_frames(vectors, form, one):
    """Number of ordered triples of pairwise orthogonal vectors with form(v, v) = 1."""
    units = [v for v in vectors if form(v, v) == one]
    n = 0
    for a in units:
        for b in units:
            if form(a, b) != 0:
                continue
            for c in units:
                if form(a, c) == 0 and form(b, c) == 0:
                    n += 1
    return n


def test_go3_order_by_enumeration():
    q = 3
    vecs = list(itertools.product(range(q), repeat=3))

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v)) % q

    assert _count_orthonormal_frames(vecs, dot, 1) == classical_orders(3)["GO3"] == 48


def test_gu3_order_by_enumeration():
    F4 = GF(4)
    vecs = list(itertools.product(range(4), repeat=3))

    def herm(u, v):
        acc = 0
        for x, y in zip(u, v):
            acc = F4.add(acc, F4.mul(x, F4.pow(y, 2)))
        return acc

    assert _count_orthonormal_frames(vecs, herm, 1) == classical_orders(4)["GU3"] == 648


@pytest.mark.parametrize("q", [2, 3])
def test_gl3_order_by_closure(q):
    G = gl3_mod._Group(q)
    assert len(G.closure(gl3_mod.gl3_generators(q))) == gl_order(3, q)


def test_small_orders():
    assert classical_orders(7)["GO3"] == 672
    assert classical_orders(2)["GL3"] == 168


# -- the sieve ------------------------------------------------------------------------------


def full_evidence(qp):
    return SieveEvidence(qp, True, qp * qp, True, True)


@pytest.mark.parametrize("qp", [7, 11, 13, 49, 343, 9, 25, 27, 81, 121, 169])
def test_sieve_surjective_with_full_evidence(qp):
    v = aschbacher_sieve(full_evidence(qp))
    assert v.surjective and v.verdict == "surjective"
    assert [c.name for c in v.classes] == list(CLASS_NAMES)


def test_sieve_q7_all_classes():
    v = aschbacher_sieve(full_evidence(7))
    status = {c.name: c.status for c in v.classes}
    assert status == {"C1": EXCLUDED, "C2": EXCLUDED, "C3": EXCLUDED, "C4": NOT_APPLICABLE,
                      "C5": NOT_APPLICABLE, "C6": EXCLUDED, "C7": NOT_APPLICABLE, "C8": EXCLUDED,
                      "S": EXCLUDED}


def test_sieve_c5_at_49():
    v = aschbacher_sieve(full_evidence(49))
    c5 = v.by_name("C5")
    assert c5.status == EXCLUDED
    bound = 7 ** 3 * 48 * 342 * 48
    assert c5.data["q0=7"]["bound"] == bound
    assert bound % 7 ** 4 != 0 and bound % 7 ** 3 == 0


def test_sieve_c6_applicability():
    assert aschbacher_sieve(full_evidence(7)).by_name("C6").status == EXCLUDED
    assert aschbacher_sieve(full_evidence(25)).by_name("C6").status == EXCLUDED
    assert aschbacher_sieve(full_evidence(49)).by_name("C6").status == NOT_APPLICABLE
    assert aschbacher_sieve(full_evidence(11)).by_name("C6").status == NOT_APPLICABLE
    assert aschbacher_sieve(full_evidence(9)).by_name("C6").status == NOT_APPLICABLE


def test_sieve_divisor_one_fails():
    v = aschbacher_sieve(SieveEvidence(7, True, 1, True, True))
    assert not v.surjective and v.verdict == "FAILED"
    for name in ("C2", "C3", "C6", "C8", "S"):
        assert v.by_name(name).status == FAILED


@pytest.mark.parametrize("flag", ["irreducible", "det_full", "center_contained"])
@pytest.mark.parametrize("qp", [7, 49])
def test_sieve_mutation_each_boolean(flag, qp):
    ev = dataclasses.replace(full_evidence(qp), **{flag: False})
    assert not aschbacher_sieve(ev).surjective


evidence = st.builds(
    SieveEvidence,
    st.sampled_from([7, 9, 11, 13, 25, 27, 49, 121, 343]),
    st.booleans(),
    st.integers(1, 10 ** 6),
    st.booleans(),
    st.booleans(),
)


@given(evidence, st.integers(1, 50))
def test_sieve_monotone(ev, k):
    """Strengthening evidence never turns a surjective verdict into a failure."""
    if not aschbacher_sieve(ev).surjective:
        return
    stronger = dataclasses.replace(ev, divisor=ev.divisor * k, irreducible=True, det_full=True,
                                   center_contained=True)
    assert aschbacher_sieve(stronger).surjective


@given(evidence)
def test_sieve_class_statuses_valid(ev):
    v = aschbacher_sieve(ev)
    assert all(c.status in (EXCLUDED, NOT_APPLICABLE, FAILED) for c in v.classes)
    assert v.surjective == all(c.status != FAILED for c in v.classes)
    assert v.to_dict()["verdict"] == v.verdict


# -- normal subgroups -----------------------------------------------------------------------


@pytest.fixture(params=["default", "python"])
def backend_choice(request, monkeypatch):
    if request.param == "python":
        monkeypatch.setattr(gl3_mod, "backend", _fallback)
    return request.param


def test_normal_subgroups_q2(backend_choice):
    rep = normal_solvable_center_check(2)
    assert rep.passed
    assert rep.group_order == 168 and rep.class_count == 6
    assert sorted(h["order"] for h in rep.normal_subgroups) == [1, 168]
    assert rep.center_order == 1
    full = next(h for h in rep.normal_subgroups if h["order"] == 168)
    assert full["is_SL3"] and not full["solvable"]


def test_normal_subgroups_q3(backend_choice):
    rep = normal_solvable_center_check(3)
    assert rep.passed
    assert rep.group_order == 11232 and rep.class_count == 24
    assert sorted(h["order"] for h in rep.normal_subgroups) == [1, 2, 5616, 11232]
    assert rep.center_order == 2
    for h in rep.normal_subgroups:
        if h["solvable"]:
            assert h["in_center"]
    assert rep.sl3_normal_nonsolvable
    assert sum(rep.class_sizes) == 11232


def test_normal_subgroups_errors():
    with pytest.raises(ValueError, match="prime q only"):
        normal_solvable_center_check(4)
    with pytest.raises(ValueError, match="resource cap exceeded"):
        normal_solvable_center_check(5)


# -- subrings -----------------------------------------------------------------------------


F7 = GF(7)
T = Poly.T(F7)


def _closure_oracle(S, m):
    """Closure under + and * by breadth-first search over explicit residues."""
    F = m.field
    seen = {Poly(F), Poly(F, (1,))} | {s % m for s in S}
    frontier = list(seen)
    while frontier:
        new = []
        cur = list(seen)
        for a in frontier:
            for b in cur:
                for c in ((a + b) % m, (a * b) % m):
                    if c not in seen:
                        seen.add(c)
                        new.append(c)
        frontier = new
    return seen


def test_subring_examples():
    m = (T - Poly(F7, (1,))) * (T - Poly(F7, (2,)))
    S = [-(T - Poly(F7, (3,))), -(T - Poly(F7, (4,)))]
    R = subring_generated(S, m)
    assert R.is_full and R.dimension == 2 and R.size == 49
    R0 = subring_generated([Poly(F7)], m)
    assert R0.dimension == 1 and R0.size == 7 and not R0.is_full
    assert subring_generated([], m).size == 7


@pytest.mark.parametrize("gens,mod", [
    (["T^2"], "T^3"),
    (["T + 3"], "T^2 + 1"),
    (["2"], "T^2 - 3*T + 2"),
    (["T^2 + T"], "T^3 + T^2"),
])
def test_subring_matches_bfs_closure(gens, mod):
    m = parse_poly(mod, F7)
    S = [parse_poly(g, F7) for g in gens]
    R = subring_generated(S, m)
    oracle = _closure_oracle(S, m)
    assert R.size == len(oracle)
    assert set(R.elements()) == oracle


def test_subring_over_F9_counts_prime_coordinates():
    F9 = GF(9)
    m = parse_poly("T - 1", F9)
    assert subring_generated([], m).size == 3
    R = subring_generated([parse_poly("[0,1]", F9)], m)
    assert R.is_full and R.size == 9


@given(st.lists(st.lists(st.integers(0, 6), max_size=3), max_size=3))
def test_subring_idempotent_and_closed(raw):
    m = (T - Poly(F7, (1,))) * (T * T + Poly(F7, (1,)))
    S = [Poly(F7, cs) for cs in raw]
    R = subring_generated(S, m)
    again = subring_generated(R.basis, m)
    assert again.dimension == R.dimension
    for a in R.basis:
        for b in R.basis:
            assert (a * b) % m in R
        assert a in R


# -- isomorphisms and the coset test --------------------------------------------------------


def _is_iso(tab, F1, F2):
    for x in F1.elements():
        for y in F1.elements():
            if tab[F1.add(x, y)] != F2.add(tab[x], tab[y]) or tab[F1.mul(x, y)] != F2.mul(tab[x], tab[y]):
                return False
    return len(set(tab)) == F2.order


@pytest.mark.parametrize("q,g1,g2,count", [
    (7, "T - 1", "T - 2", 1),
    (7, "T^2 + 1", "T^2 + T + 3", 2),
    (9, "T - 1", "T - 2", 2),
])
def test_field_isomorphisms(q, g1, g2, count):
    F = GF(q)
    F1 = PrimeIdeal(parse_poly(g1, F)).residue_field
    F2 = PrimeIdeal(parse_poly(g2, F)).residue_field
    isos = field_isomorphisms(F1, F2)
    assert len(isos) == count
    for tab in isos:
        assert _is_iso(tab, F1, F2)


def test_field_isomorphisms_size_mismatch():
    F1 = PrimeIdeal(T - Poly(F7, (1,))).residue_field
    F2 = PrimeIdeal(T * T + Poly(F7, (1,))).residue_field
    assert field_isomorphisms(F1, F2) == []
    assert coset_trace_test([1, 0, 0, 1], F1, [1, 0, 0, 1], F2).status == "not-applicable"


def _sides(phi, L1, L2, Pp):
    Pc = frob_charpoly(phi, Pp)
    P1 = charpoly_mod(Pc, L1.generator).inverse().in_field(L1)
    P2 = charpoly_mod(Pc, L2.generator).in_field(L2)
    return P1, P2


def test_coset_positive_control():
    F = F7
    L1, L2 = PrimeIdeal(T - Poly(F, (1,))), PrimeIdeal(T - Poly(F, (2,)))
    F1, F2 = L1.residue_field, L2.residue_field
    P1 = [3, 5, 2, 1]
    lam = 4
    (sigma,) = field_isomorphisms(F1, F2)
    sP1 = [sigma[c] for c in P1]
    P2 = [F2.mul(sP1[k], F2.inv(F2.pow(lam, 3 - k))) for k in range(3)] + [1]
    res = coset_trace_test(P1, F1, P2, F2)
    assert res.status == "consistent" and lam in res.lambdas[0]


@pytest.mark.parametrize("g1", ["0", "T"])
def test_coset_refuted_at_every_degree_one_prime(g1):
    phi = DrinfeldModule.family(F7, parse_poly(g1, F7), Poly(F7, (1,)))
    L1, L2 = PrimeIdeal(T - Poly(F7, (1,))), PrimeIdeal(T - Poly(F7, (2,)))
    F1, F2 = L1.residue_field, L2.residue_field
    for c in range(3, 7):
        P1, P2 = _sides(phi, L1, L2, PrimeIdeal(T - Poly(F7, (c,))))
        assert coset_trace_test(P1, F1, P2, F2).refuted


def test_coset_type2_trace_argument():
    # Type 2: a_1 = 1 at degree-one primes; the inverse side has trace a_2/mu P = 0, the other side -1
    phi = DrinfeldModule.family(F7, Poly(F7), Poly(F7, (1,)))
    L1, L2 = PrimeIdeal(T - Poly(F7, (1,))), PrimeIdeal(T - Poly(F7, (2,)))
    P1, P2 = _sides(phi, L1, L2, PrimeIdeal(T - Poly(F7, (3,))))
    assert P1[2] == 0 and P2[2] == 1


def test_coset_refuted_for_degree_two_pair():
    phi = DrinfeldModule.family(F7, T, Poly(F7, (1,)))
    L1, L2 = PrimeIdeal(T * T + Poly(F7, (1,))), PrimeIdeal(parse_poly("T^2 + T + 3", F7))
    F1, F2 = L1.residue_field, L2.residue_field
    sigmas = field_isomorphisms(F1, F2)
    refuting = set()
    for Pp in enum_primes(F7, 1, exclude={PrimeIdeal(T)}):
        P1, P2 = _sides(phi, L1, L2, Pp)
        res = coset_trace_test(P1, F1, P2, F2, sigmas)
        refuting |= {i for i, lams in res.lambdas.items() if not lams}
    assert refuting == set(range(len(sigmas)))
