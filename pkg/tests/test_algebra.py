from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drincert.algebra import (
    DEG_ZERO,
    GF,
    Poly,
    PolyParseError,
    PrimeIdeal,
    count_monic_irreducibles,
    enum_primes,
    field_with_modulus,
    format_poly,
    is_irreducible,
    monic_polys,
    parse_poly,
    poly_gcd,
    poly_xgcd,
    residue_field,
    residue_reduce,
)

from .conftest import const


def polys(F, max_deg=5):
    return st.lists(st.integers(0, F.order - 1), max_size=max_deg + 1).map(lambda cs: Poly(F, cs))


# -- fields ---------------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 25, 27, 49])
def test_field_axioms_exhaustive_small(q):
    F = GF(q)
    els = list(F.elements())
    assert len(els) == q
    for a in els[: min(q, 12)]:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
        for b in els[: min(q, 12)]:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)


def test_canonical_modulus_is_least_irreducible():
    # F_9: u^2 + 1 is the first irreducible in (c0, c1) order: (0,0),(0,1),(0,2),(1,0)
    assert GF(9).modulus == (1, 0, 1)
    # F_49 over F_7: x^2 + 1 (-1 is a non-square mod 7)
    assert GF(49).modulus == (1, 0, 1)


def test_field_with_modulus_rejects_reducible():
    with pytest.raises(ValueError):
        field_with_modulus(3, (2, 0, 1))  # u^2 - 1
    F = field_with_modulus(3, (2, 2, 1))  # u^2 + 2u + 2
    assert F.order == 9


@given(st.integers(1, 48), st.integers(1, 48), st.integers(0, 48))
def test_f49_distributive(a, b, c):
    F = GF(49)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


# -- polynomials --------------------------------------------------------------


def test_zero_degree_sentinel(F7):
    assert Poly(F7).degree == DEG_ZERO
    assert Poly(F7, (0, 0)).is_zero()


def test_gcd_examples(F7, T7):
    split = T7 ** 7 - T7
    assert poly_gcd(T7, split) == T7
    assert poly_gcd(Poly(F7), split) == split
    assert poly_gcd(T7 * T7 + const(F7, 1), split) == const(F7, 1)


def test_gcd_zero_zero_errors(F7):
    with pytest.raises(ValueError, match="gcd undefined"):
        poly_gcd(Poly(F7), Poly(F7))


def test_gcd_of_T2_plus_1_matches_root_scan(F7, T7):
    # independent route: no x in F_7 with x^2 = -1, so T^2+1 shares no factor with T^7 - T
    f = T7 * T7 + const(F7, 1)
    assert all(f(x) != 0 for x in F7.elements())
    assert poly_gcd(f, T7 ** 7 - T7).degree == 0


@given(polys(GF(7)), polys(GF(7)))
def test_gcd_divides_and_bezout(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = poly_gcd(a, b)
    assert g.lc() == 1
    assert (a % g).is_zero() and (b % g).is_zero()
    g2, s, t = poly_xgcd(a, b)
    assert g2 == g
    assert s * a + t * b == g


@given(polys(GF(9)), polys(GF(9), 3))
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q_, r = divmod(a, b)
    assert q_ * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys(GF(5), 4), st.integers(0, 30))
def test_pow_matches_repeated_mul(a, n):
    acc = Poly(a.field, (1,))
    for _ in range(n):
        acc = acc * a
    assert a ** n == acc


def test_is_irreducible_examples(F7, T7):
    assert is_irreducible(T7)
    assert not is_irreducible(T7 * T7 - const(F7, 1))
    assert is_irreducible(T7 * T7 + const(F7, 1))
    with pytest.raises(ValueError):
        is_irreducible(const(F7, 3))


def _reducible_set(F, max_deg):
    """Monic polynomials of degree <= max_deg that are products of two monics of positive degree."""
    out = set()
    for d1 in range(1, max_deg):
        for d2 in range(d1, max_deg - d1 + 1):
            for f in monic_polys(F, d1):
                for g in monic_polys(F, d2):
                    out.add(f * g)
    return out


@pytest.mark.parametrize("q,max_deg", [(2, 3), (3, 3), (4, 3), (5, 3), (7, 2), (9, 2)])
def test_enum_primes_matches_product_sieve(q, max_deg):
    F = GF(q)
    red = _reducible_set(F, max_deg)
    expected = [f for d in range(1, max_deg + 1) for f in monic_polys(F, d) if f not in red]
    got = [P.generator for P in enum_primes(F, max_deg)]
    assert got == expected
    for d in range(1, max_deg + 1):
        assert sum(1 for f in got if f.degree == d) == count_monic_irreducibles(q, d)


def test_enum_primes_examples(F7, T7):
    assert len(enum_primes(F7, 1, exclude={PrimeIdeal(T7)})) == 6
    assert len(enum_primes(F7, 2)) == 28
    assert enum_primes(F7, 1)[0] == PrimeIdeal(T7)
    with pytest.raises(ValueError):
        enum_primes(F7, 0)


def test_residue_reduce_examples(F7, T7):
    assert residue_reduce(T7 - const(F7, 2), PrimeIdeal(T7 - const(F7, 3))) == 1
    for c in range(7):
        assert residue_reduce(T7 ** 7 - T7, PrimeIdeal(T7 - const(F7, c))) == 0
    L = PrimeIdeal(T7 * T7 + const(F7, 1))
    assert residue_reduce(T7 * T7, L) == 6


@pytest.mark.parametrize("gen", ["T^2 + 1", "T^2 + T + 3", "T + 4"])
def test_residue_field_size_by_enumeration(F7, gen):
    L = PrimeIdeal.checked(parse_poly(gen, F7))
    K = residue_field(L)
    reps = {K.reduce(f) for d in range(L.degree + 1) for f in _all_polys(F7, d)}
    assert len(reps) == K.order == 7 ** L.degree


def _all_polys(F, deg):
    for cs in itertools.product(range(F.order), repeat=deg):
        yield Poly(F, cs)


@given(polys(GF(7), 6), polys(GF(7), 6))
def test_residue_reduce_is_a_ring_map(a, b):
    F = a.field
    L = PrimeIdeal(parse_poly("T^2 + T + 3", F))
    K = L.residue_field
    assert K.reduce(a * b) == K.mul(K.reduce(a), K.reduce(b))
    assert K.reduce(a + b) == K.add(K.reduce(a), K.reduce(b))


# -- text format ---------------------------------------------------------------


@given(polys(GF(9), 6))
def test_format_parse_roundtrip(f):
    assert parse_poly(format_poly(f), f.field) == f


def test_parse_examples(F7):
    f = parse_poly("3*T^2 - T + 1", F7)
    assert f.coeffs == (1, 6, 3)
    F9 = GF(9)
    g = parse_poly("[0,1]*T + [2]", F9)
    assert g.coeffs == (2, 3)


@pytest.mark.parametrize("text,pos", [("T^^2", 2), ("3T", 1), ("T + x", 4), ("", 0), ("T +", 3)])
def test_parse_errors_carry_position(F7, text, pos):
    with pytest.raises(PolyParseError) as info:
        parse_poly(text, F7)
    assert info.value.position == pos
