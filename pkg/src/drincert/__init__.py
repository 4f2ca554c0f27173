"""Exact arithmetic for a family of rank-3 Drinfeld modules and surjectivity certificates."""

from __future__ import annotations

from .algebra import GF, FiniteField, Poly, PrimeIdeal, enum_primes, is_irreducible, parse_poly, poly_gcd
from .certify import Certificate, PairCertificate, certify_l_adic, certify_mod_l, certify_pair, run_report
from .drinfeld import TYPE1, TYPE2, NOT_IN_FAMILY, DrinfeldModule, classify_family, phi_of, reduce_at
from .frobenius import FrobCharPoly, charpoly_mod, frob_charpoly, frob_charpoly_solve, frob_matrix_oracle
from .gl3 import SieveEvidence, aschbacher_sieve, classical_orders, normal_solvable_center_check
from .skew import SkewPoly
from .valuation import NewtonPolygon, inertia_order, newton_polygon

__version__ = "0.1.0"

__all__ = [
    "GF", "FiniteField", "Poly", "PrimeIdeal", "enum_primes", "is_irreducible", "parse_poly", "poly_gcd",
    "Certificate", "PairCertificate", "certify_l_adic", "certify_mod_l", "certify_pair", "run_report",
    "TYPE1", "TYPE2", "NOT_IN_FAMILY", "DrinfeldModule", "classify_family", "phi_of", "reduce_at",
    "FrobCharPoly", "charpoly_mod", "frob_charpoly", "frob_charpoly_solve", "frob_matrix_oracle",
    "SieveEvidence", "aschbacher_sieve", "classical_orders", "normal_solvable_center_check",
    "SkewPoly", "NewtonPolygon", "inertia_order", "newton_polygon",
]
