"""Twisted polynomials K{tau} with tau * a = a^q * tau.

Two coefficient rings are supported: the polynomial ring A = F_q[T]
(coefficients are :class:`~drincert.algebra.Poly`) and a finite field K
containing F_q (coefficients are int codes).  Skew polynomials act on
x as the q-linearized polynomials sum c_i x^(q^i).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .algebra import FiniteField, Poly, prime_power
from .extfield import MAX_EXT_DEGREE, ExtensionOverflow, PrimeExtension, matmul_mod, nullspace_mod, rank_mod


class PolyCoeffs:
    """Coefficient ring A = F_q[T]."""

    kind = "A"

    def __init__(self, Fq: FiniteField):
        self.field = Fq
        self.q = Fq.order
        self._e = Fq.prime_degree

    def zero(self):
        return Poly(self.field)

    def one(self):
        return Poly(self.field, (1,))

    def coerce(self, c):
        if isinstance(c, Poly):
            return c
        return Poly(self.field, (self.field.from_int(c) if isinstance(c, int) else c,))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def frob(self, a, i: int):
        """a^(q^i)."""
        return a.frobenius(self._e * i) if i else a

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def fmt(self, a) -> str:
        s = str(a)
        return f"({s})" if " + " in s else s

    def __repr__(self):
        return f"A over GF({self.q})"


class FieldCoeffs:
    """Coefficient ring a finite field K that contains F_q."""

    kind = "K"

    def __init__(self, K: FiniteField, q: int):
        p, e = prime_power(q)
        if K.p != p or K.prime_degree % e:
            raise ValueError("K must contain F_q")
        self.field = K
        self.q = q

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, c):
        return c

    def add(self, a, b):
        return self.field.add(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def frob(self, a, i: int):
        return self.field.pow(a, self.q ** i) if i else a

    def is_zero(self, a) -> bool:
        return a == 0

    def fmt(self, a) -> str:
        s = self.field.format(a)
        return f"({s})" if " + " in s else s

    def __repr__(self):
        return f"{self.field!r} with q={self.q}"


@functools.lru_cache(maxsize=None)
def ring_A(Fq: FiniteField) -> PolyCoeffs:
    return PolyCoeffs(Fq)


@functools.lru_cache(maxsize=None)
def ring_K(K: FiniteField, q: int) -> FieldCoeffs:
    return FieldCoeffs(K, q)


class SkewPoly:
    """Element sum c_i tau^i of a twisted polynomial ring (lowest degree first)."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=()):
        cs = [ring.coerce(c) for c in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def tau(cls, ring, n: int = 1) -> SkewPoly:
        return cls(ring, [ring.zero()] * n + [ring.one()])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero()

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        if other.ring is not self.ring:
            raise ValueError("skew polynomials over different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(R, [R.add(self[i], other[i]) for i in range(n)])

    def __neg__(self):
        return SkewPoly(self.ring, [self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SkewPoly):
            return skew_mul(self, other)
        return NotImplemented

    def scale(self, c) -> SkewPoly:
        """Left multiplication by a coefficient: c * self."""
        R = self.ring
        c = R.coerce(c)
        return SkewPoly(R, [R.mul(c, x) for x in self.coeffs])

    def map_coeffs(self, fn, ring) -> SkewPoly:
        return SkewPoly(ring, [fn(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        R = self.ring
        parts = []
        for i, c in enumerate(self.coeffs):
            if R.is_zero(c):
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            cs = R.fmt(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SkewPoly({self})"


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Product in K{tau} using tau^i * b = b^(q^i) * tau^i."""
    if f.ring is not g.ring:
        raise ValueError("ring mismatch in skew multiplication")
    R = f.ring
    if f.is_zero() or g.is_zero():
        return SkewPoly(R)
    out = [R.zero()] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if R.is_zero(a):
            continue
        for j, b in enumerate(g.coeffs):
            if R.is_zero(b):
                continue
            out[i + j] = R.add(out[i + j], R.mul(a, R.frob(b, i)))
    return SkewPoly(R, out)


@dataclass(frozen=True)
class Linearized:
    """The q-linearized polynomial sum c_i x^(q^i) attached to a skew polynomial."""

    ring: object
    coeffs: tuple

    def terms(self):
        """(exponent, coefficient) pairs with nonzero coefficient."""
        R = self.ring
        return [(R.q ** i, c) for i, c in enumerate(self.coeffs) if not R.is_zero(c)]

    def __call__(self, x):
        """Evaluate at x: an element code of K, or a Poly when the ring is A."""
        R = self.ring
        if R.kind == "K":
            K = R.field
            acc = 0
            for e, c in self.terms():
                acc = K.add(acc, K.mul(c, K.pow(x, e)))
            return acc
        acc = Poly(R.field)
        for e, c in self.terms():
            acc = acc + c * x ** e
        return acc

    def to_skew(self) -> SkewPoly:
        return SkewPoly(self.ring, self.coeffs)

    def to_poly(self) -> Poly:
        """Dense polynomial over K (field coefficients only)."""
        if self.ring.kind != "K":
            raise TypeError("dense form only for field coefficients")
        out = [0] * (self.ring.q ** max(len(self.coeffs) - 1, 0) + 1)
        for e, c in self.terms():
            out[e] = c
        return Poly(self.ring.field, out)

    def __str__(self):
        R = self.ring
        parts = []
        for e, c in self.terms():
            mono = "x" if e == 1 else f"x^{e}"
            cs = R.fmt(c)
            parts.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(parts) if parts else "0"


def to_linearized(f: SkewPoly) -> Linearized:
    return Linearized(f.ring, f.coeffs)


# -- kernels over finite fields ------------------------------------------


class BadReduction(ValueError):
    """The linearized polynomial is inseparable (zero x-coefficient)."""


def _frob_order_on_quotient(f: SkewPoly, d: int, cap: int) -> int:
    """Order of tau^d acting by left multiplication on K{tau}/K{tau}f.

    This equals the degree over K of the field generated by the roots of f.
    """
    R = f.ring
    K = R.field
    r = len(f.coeffs) - 1
    lead_inv = K.inv(f.coeffs[-1])
    red = [K.neg(K.mul(lead_inv, c)) for c in f.coeffs[:-1]]

    def tau_times(v):
        top = R.frob(v[-1], 1)
        out = [0] + [R.frob(c, 1) for c in v[:-1]]
        if top:
            out = [K.add(o, K.mul(top, rc)) for o, rc in zip(out, red)]
        return out

    identity = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    state = [row[:] for row in identity]
    for n in range(1, cap + 1):
        for _ in range(d):
            state = [tau_times(v) for v in state]
        if state == identity:
            return n
    raise ExtensionOverflow(f"splitting degree exceeds cap {cap}")


@dataclass
class KernelBasis:
    """Roots of a separable linearized polynomial inside L = F_p[y]/(H)."""

    ext: PrimeExtension
    embedding: np.ndarray  # prime coordinates of K -> L
    fp_basis: np.ndarray  # columns: F_p-basis of the root space
    splitting_degree: int  # [K(roots) : K]
    q: int

    @property
    def e(self) -> int:
        return prime_power(self.q)[1]

    @property
    def dimension(self) -> int:
        """Dimension over F_q."""
        return self.fp_basis.shape[1] // self.e

    @property
    def size(self) -> int:
        return self.ext.p ** self.fp_basis.shape[1]

    def scalar_matrix(self) -> np.ndarray | None:
        """Matrix on L of multiplication by the generator u of F_q (None if q is prime)."""
        if self.e == 1:
            return None
        return self.ext.mul_matrix(self.embedding[:, 1])

    def fq_basis(self) -> list[np.ndarray]:
        """Roots forming an F_q-basis of the root space."""
        p, e = self.ext.p, self.e
        u_mat = self.scalar_matrix()
        chosen: list[np.ndarray] = []
        span = np.zeros((self.ext.m, 0), dtype=np.int64)
        for j in range(self.fp_basis.shape[1]):
            v = self.fp_basis[:, j]
            block = [v]
            for _ in range(1, e):
                block.append(matmul_mod(u_mat, block[-1].reshape(-1, 1), p)[:, 0])
            cand = np.hstack([span, np.stack(block, axis=1)])
            if rank_mod(cand.T, p) == cand.shape[1]:
                span = cand
                chosen.append(v)
        return chosen


def linearized_kernel(f: SkewPoly) -> KernelBasis:
    """Roots of the linearized polynomial of f (over a finite field K) in an explicit extension."""
    R = f.ring
    if R.kind != "K":
        raise TypeError("kernel computation needs finite-field coefficients")
    K = R.field
    if f.is_zero():
        raise ValueError("kernel of the zero map is not finite")
    if f.coeffs[0] == 0:
        raise BadReduction("bad reduction: linearized polynomial is inseparable")
    p = K.p
    e = prime_power(R.q)[1]
    dK = K.prime_degree // e
    r = len(f.coeffs) - 1
    if r == 0:
        L = PrimeExtension(p, K.prime_degree)
        return KernelBasis(L, L.embed_field(K), np.zeros((L.m, 0), dtype=np.int64), 1, R.q)
    cap = MAX_EXT_DEGREE // K.prime_degree
    k = _frob_order_on_quotient(f, dK, cap)
    L = PrimeExtension(p, K.prime_degree * k)
    E = L.embed_field(K)
    fmat = np.zeros((L.m, L.m), dtype=np.int64)
    for i, c in enumerate(f.coeffs):
        if c:
            mc = L.mul_matrix(L.element(K, E, c))
            fmat = (fmat + matmul_mod(mc, L.frob_matrix(e * i), p)) % p
    basis = nullspace_mod(fmat, p)
    if basis.shape[1] != e * r:
        raise ArithmeticError(f"kernel has F_p-dimension {basis.shape[1]}, expected {e * r}")
    return KernelBasis(L, E, basis, k, R.q)
