"""Exact-rational valuation bookkeeping at the prime (T).

Valuations live in Q together with a +infinity sentinel.  Newton polygons
are lower convex hulls of (exponent, valuation) points; a segment of slope s
and horizontal length n accounts for n roots of valuation -s.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, PrimeIdeal, monic_polys
from .drinfeld import DrinfeldModule, phi_of


@functools.total_ordering
class _Infinity:
    """+infinity for valuations: larger than every rational, absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("+inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            raise ValueError("0 * infinity is undefined")
        return self

    __rmul__ = __mul__

    def __sub__(self, other):
        if other is self:
            raise ValueError("inf - inf is undefined")
        return self

    def __repr__(self):
        return "+inf"

    __str__ = __repr__


INF = _Infinity()


def as_valuation(v):
    if v is INF or (isinstance(v, float) and v == float("inf")):
        return INF
    return Fraction(v)


def fmt_val(v) -> str:
    return "+inf" if v is INF else str(v)


def poly_valuation(f: Poly):
    """T-adic valuation of a polynomial; +inf for zero."""
    v = f.valuation()
    return INF if v == float("inf") else Fraction(v)


@dataclass
class NewtonPolygon:
    points: list  # (exponent, valuation), valuation possibly INF
    vertices: list  # hull points, collinear ones kept
    segments: list  # (slope, length)

    def root_valuations(self) -> list:
        """(valuation, multiplicity) of the roots: minus each slope."""
        return [(-s, n) for s, n in self.segments]

    def on_hull(self, point) -> bool:
        return tuple(point) in {tuple(v) for v in self.vertices}

    def to_text(self) -> str:
        lines = ["exponent\tvaluation\ton_hull"]
        for e, v in self.points:
            lines.append(f"{e}\t{fmt_val(v)}\t{'yes' if self.on_hull((e, v)) else 'no'}")
        return "\n".join(lines)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(points) -> NewtonPolygon:
    """Lower convex hull of the finite points, with collinear points kept."""
    pts = [(int(e), as_valuation(v)) for e, v in points]
    best: dict[int, object] = {}
    for e, v in pts:
        if v is INF:
            continue
        if e not in best or v < best[e]:
            best[e] = v
    finite = sorted(best.items())
    if len(finite) < 2:
        raise ValueError("a Newton polygon needs at least two points of finite valuation")
    hull: list = []
    for pt in finite:
        # pop while the last turn is clockwise (strictly below); collinear points stay
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) < 0:
            hull.pop()
        hull.append(pt)
    segments: list = []
    for a, b in zip(hull, hull[1:]):
        slope = Fraction(b[1] - a[1]) / (b[0] - a[0])
        length = b[0] - a[0]
        if segments and segments[-1][0] == slope:
            segments[-1] = (slope, segments[-1][1] + length)
        else:
            segments.append((slope, length))
    return NewtonPolygon(sorted(pts, key=lambda t: t[0]), hull, segments)


def phi_coeff_valuations(phi: DrinfeldModule, a: Poly) -> list:
    """(q^i - 1, nu_T(coefficient of tau^i)) for the polynomial phi_a(x)/x."""
    q = phi.q
    f = phi_of(phi, a)
    return [(q ** i - 1, poly_valuation(c)) for i, c in enumerate(f.coeffs)]


# -- inertia at (T) ----------------------------------------------------------


@dataclass
class InertiaReport:
    ideal: PrimeIdeal
    order_divisor: int
    z_valuation: Fraction
    identity_check: bool
    details: dict = field(default_factory=dict)


def lattice_valuation(i: int, z_val: Fraction, b_zero: bool, w_val, q: int):
    """Valuation of e(a1 w1 + a2 w2 + b z): q^(2i) nu(z) if b != 0 with deg b = i, else nu(a1 w1 + a2 w2)."""
    if b_zero:
        return as_valuation(w_val)
    if z_val >= 0:
        raise ValueError("z must have negative valuation")
    if i < 0:
        raise ValueError("deg b must be >= 0")
    return Fraction(q) ** (2 * i) * Fraction(z_val)


def residue_degree_counts(q: int, D: int) -> dict[int, int]:
    """Number of nonzero b in A/(l), deg l = D, with deg b = i (by enumeration of b)."""
    from .algebra import GF

    F = GF(q)
    counts: dict[int, int] = {}
    for deg in range(D):
        n = 0
        for f in monic_polys(F, deg):
            n += F.order - 1  # all nonzero multiples of this monic
        counts[deg] = n
    return counts


def inertia_order(phi: DrinfeldModule, L: PrimeIdeal) -> InertiaReport:
    """Order divisor of the inertia image at (T) on phi[l]."""
    q = phi.q
    if L.is_T():
        pts = phi_coeff_valuations(phi, Poly.T(phi.field))
        np_ = newton_polygon(pts)
        target = Fraction(1, q * q)
        seg = [(s, n) for s, n in np_.segments if s == target]
        ok = bool(seg) and seg[0][1] == q ** 3 - q ** 2
        return InertiaReport(L, q * q, -target, ok, {"segments": [(str(s), n) for s, n in np_.segments]})
    D = L.degree
    lhs = Fraction((q - 1) * sum(q ** (3 * (i - 1)) for i in range(1, D + 1)))
    counts = residue_degree_counts(q, D)
    pairs = q ** (2 * D)  # choices of (a1, a2) in (A/l)^2
    weight = sum(pairs * n * q ** (2 * i) for i, n in counts.items())
    # lhs = -sum over triples with b != 0 of q^(2 deg b) * nu(z)
    z_val = -lhs / weight
    rhs = -sum(pairs * n * lattice_valuation(i, z_val, False, None, q) for i, n in counts.items())
    expected = -Fraction(1, q ** (2 * D))
    ok = rhs == lhs and z_val == expected
    divisor = z_val.denominator
    return InertiaReport(L, divisor, z_val, ok, {
        "lhs": str(lhs),
        "rhs": str(rhs),
        "counts_by_deg_b": {str(i): pairs * n for i, n in counts.items()},
    })


# -- non-scalar element mod (T)^2 ----------------------------------------------


def _gl3_order(q: int) -> int:
    return (q ** 3 - 1) * (q ** 3 - q) * (q ** 3 - q ** 2)


def _p_adic(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def nonscalar_witness_at_T(phi: DrinfeldModule) -> dict:
    """Valuation evidence that the mod-(T^2) image has a non-scalar element trivial mod (T)."""
    q = phi.q
    F = phi.field
    T = Poly.T(F)
    np2 = newton_polygon(phi_coeff_valuations(phi, T * T))
    want = Fraction(1, q ** 4)
    seg = [(s, n) for s, n in np2.segments if s == want]
    polygon_ok = bool(seg) and seg[0][1] == q ** 5 - q ** 4
    gl3 = _gl3_order(q)
    divides_gl3 = gl3 % q ** 4 == 0
    nu1 = poly_valuation(phi.g1)
    nu2 = poly_valuation(phi.g2)
    terms = [
        -Fraction(1, q ** 4),
        (q - 1) * nu1 - Fraction(1, q ** 3) if nu1 is not INF else INF,
        (q - 1) * nu2 - Fraction(1, q ** 2) if nu2 is not INF else INF,
        Fraction(q - 1) - Fraction(1, q),
    ]
    finite = [t for t in terms if t is not INF]
    m = min(finite)
    unique = sum(1 for t in finite if t == m) == 1
    ok = polygon_ok and not divides_gl3 and unique and m == -Fraction(1, q ** 2) and m != -want
    return {
        "verified": ok,
        "polygon_segments": [(str(s), n) for s, n in np2.segments],
        "root_valuation": str(-want),
        "root_count": seg[0][1] if seg else 0,
        "q4_divides_gl3": divides_gl3,
        "gl3_p_adic_valuation": _p_adic(gl3, F.p),
        "scalar_terms": [fmt_val(t) for t in terms],
        "minimum": str(m),
        "minimum_unique": unique,
    }
