from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drincert.algebra import GF, Poly, PrimeIdeal, enum_primes, parse_poly
from drincert.drinfeld import DrinfeldModule
from drincert.valuation import (
    INF,
    inertia_order,
    lattice_valuation,
    newton_polygon,
    nonscalar_witness_at_T,
    phi_coeff_valuations,
    residue_degree_counts,
)


def fam(q, g1, g2):
    F = GF(q)
    return DrinfeldModule.family(F, parse_poly(g1, F), parse_poly(g2, F))


# -- Newton polygons -----------------------------------------------------------------------


def test_two_points_single_slope():
    np_ = newton_polygon([(0, 0), (1, 0)])
    assert np_.segments == [(0, 1)]


def test_too_few_points():
    with pytest.raises(ValueError):
        newton_polygon([(0, 1), (3, INF)])


def test_collinear_points_merge_into_one_segment():
    np_ = newton_polygon([(0, 0), (1, 1), (2, 2)])
    assert np_.segments == [(1, 2)]
    assert np_.on_hull((1, 1))


@pytest.mark.parametrize("q", [7, 9, 11])
@pytest.mark.parametrize("g1", ["0", "T", "T^2 + T"])
def test_family_phi_T_polygon(q, g1):
    phi = fam(q, g1, "1")
    np_ = newton_polygon(phi_coeff_valuations(phi, Poly.T(phi.field)))
    assert np_.segments[-1] == (Fraction(1, q * q), q ** 3 - q ** 2)
    assert (Fraction(-1, q * q), q ** 3 - q ** 2) in np_.root_valuations()


@pytest.mark.parametrize("g1", ["0", "T"])
def test_family_phi_T2_polygon(g1):
    q = 7
    phi = fam(q, g1, "1")
    pts = phi_coeff_valuations(phi, Poly.T(phi.field) ** 2)
    assert pts[0] == (0, 2)
    assert pts[6] == (q ** 6 - 1, q ** 4 - q ** 3 + q - 1)
    assert pts[5][1] == q - 1 and pts[4][1] == 0
    np_ = newton_polygon(pts)
    assert (Fraction(1, q ** 4), q ** 5 - q ** 4) in np_.segments


def test_type2_tau1_valuation():
    phi = fam(7, "0", "1")
    assert phi_coeff_valuations(phi, Poly.T(phi.field))[1] == (6, INF)
    phi = fam(7, "T^7 - T", "1")
    assert phi_coeff_valuations(phi, Poly.T(phi.field))[1][1] == 6


def test_text_export():
    text = newton_polygon([(0, 1), (6, INF), (48, 0), (342, 6)]).to_text()
    lines = text.splitlines()
    assert lines[0] == "exponent\tvaluation\ton_hull"
    assert "6\t+inf\tno" in lines


points = st.lists(
    st.tuples(st.integers(0, 40), st.fractions(min_value=-20, max_value=20, max_denominator=12)),
    min_size=2, max_size=12,
)


@given(points)
def test_hull_properties(pts):
    exps = {e for e, _ in pts}
    if len(exps) < 2:
        return
    np_ = newton_polygon(pts)
    slopes = [s for s, _ in np_.segments]
    assert slopes == sorted(slopes) and len(set(slopes)) == len(slopes)
    assert sum(n for _, n in np_.segments) == max(exps) - min(exps)
    # every point lies on or above the hull
    hull = np_.vertices
    for e, v in pts:
        for a, b in zip(hull, hull[1:]):
            if a[0] <= e <= b[0]:
                line = a[1] + (b[1] - a[1]) * Fraction(e - a[0], b[0] - a[0])
                assert v >= line
    for v in hull:
        assert v in [(e, Fraction(x)) for e, x in pts]


def test_root_valuations_match_constructed_roots():
    # (x - a)(x - b)(x - c) with v(a) = 0, v(b) = 1, v(c) = 3 over Q_p-like valuations:
    # coefficient valuations 4, 3, 0, 0 give slopes -3, -1, 0
    np_ = newton_polygon([(0, 4), (1, 1), (2, 0), (3, 0)])
    assert sorted(np_.root_valuations()) == [(0, 1), (1, 1), (3, 1)]


# -- inertia --------------------------------------------------------------------------------


def test_inertia_at_T():
    phi = fam(7, "T", "1")
    rep = inertia_order(phi, PrimeIdeal(Poly.T(phi.field)))
    assert rep.order_divisor == 49 and rep.identity_check


@pytest.mark.parametrize("D,val,div", [(1, Fraction(-1, 49), 49), (2, Fraction(-1, 2401), 2401)])
def test_inertia_examples(D, val, div):
    phi = fam(7, "0", "1")
    F = phi.field
    L = next(L for L in enum_primes(F, D) if L.degree == D and not L.is_T())
    rep = inertia_order(phi, L)
    assert rep.z_valuation == val and rep.order_divisor == div and rep.identity_check


@pytest.mark.parametrize("q", [7, 9, 11])
@pytest.mark.parametrize("D", [1, 2, 3])
def test_inertia_identity(q, D):
    phi = fam(q, "T", "1")
    F = phi.field
    L = next(L for L in enum_primes(F, D) if L.degree == D and not L.is_T())
    rep = inertia_order(phi, L)
    assert rep.identity_check
    assert rep.order_divisor == q ** (2 * D)


@pytest.mark.parametrize("q,D", [(7, 1), (7, 2), (3, 3)])
def test_identity_by_triple_enumeration(q, D):
    """Sum q^(2 deg b) over all (a1, a2, b) in F_l^3 with b != 0, by explicit enumeration."""
    F = GF(q)
    lhs = (q - 1) * sum(q ** (3 * (i - 1)) for i in range(1, D + 1))
    z = Fraction(-1, q ** (2 * D))
    total = Fraction(0)
    for cs in _all_coeffs(q, D):
        b = Poly(F, cs)
        if b.is_zero():
            continue
        total += q ** (2 * D) * q ** (2 * b.degree) * (-z)
    assert total == lhs


def _all_coeffs(q, D):
    import itertools

    return itertools.product(range(q), repeat=D)


def test_residue_degree_counts():
    assert residue_degree_counts(7, 1) == {0: 6}
    assert residue_degree_counts(7, 3) == {0: 6, 1: 42, 2: 294}


def test_lattice_valuation_examples():
    assert lattice_valuation(0, Fraction(-1, 49), False, None, 7) == Fraction(-1, 49)
    assert lattice_valuation(1, Fraction(-1, 2401), False, None, 7) == Fraction(-1, 49)
    assert lattice_valuation(0, Fraction(-1, 49), True, 0, 7) == 0
    with pytest.raises(ValueError):
        lattice_valuation(0, Fraction(1, 49), False, None, 7)


# -- non-scalar witness ---------------------------------------------------------------------


def test_nonscalar_witness_type1():
    w = nonscalar_witness_at_T(fam(7, "T", "1"))
    assert w["verified"]
    assert w["scalar_terms"] == ["-1/2401", str(6 - Fraction(1, 343)), "-1/49", str(6 - Fraction(1, 7))]
    assert w["minimum"] == "-1/49" and w["minimum_unique"]
    assert w["root_count"] == 7 ** 5 - 7 ** 4


def test_nonscalar_witness_g1_zero():
    w = nonscalar_witness_at_T(fam(7, "0", "1"))
    assert w["verified"]
    assert w["scalar_terms"][1] == "+inf"
    assert w["minimum"] == "-1/49"


def test_q4_does_not_divide_gl3():
    w = nonscalar_witness_at_T(fam(7, "T", "1"))
    gl3 = (7 ** 3 - 1) * (7 ** 3 - 7) * (7 ** 3 - 49)
    assert gl3 % 7 ** 3 == 0 and gl3 % 7 ** 4 != 0
    assert w["gl3_p_adic_valuation"] == 3 and not w["q4_divides_gl3"]
