"""Finite fields, the polynomial ring A = F_q[T], its primes and residue fields.

Field elements are plain ints.  For a field built as a tower
F_p ⊂ F_q ⊂ F_q[T]/(l), an element's code written in base p lists its
coordinates over F_p; written in base |base field| it lists its coefficients
over the base field (lowest degree first).  Addition is digitwise, and
multiplication goes through discrete-log tables.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass

import numpy as np

#: Degree of the zero polynomial.  Comparisons work; it is never an int.
DEG_ZERO = float("-inf")

_ADD_TABLE_LIMIT = 1400


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and _prime_factors(n) == [n]


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    fs = _prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, e, n = fs[0], 0, q
    while n > 1:
        n //= p
        e += 1
    return p, e


class FiniteField:
    """A finite field given as F_p or as base[x]/(modulus).

    ``modulus`` is a tuple of base-field codes, lowest degree first, monic.
    """

    def __init__(self, p: int, base: FiniteField | None = None, modulus: tuple[int, ...] | None = None):
        if base is None:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            self.base = None
            self.modulus = None
            self.degree = 1
            self.order = p
            self.prime_degree = 1
        else:
            if modulus is None or len(modulus) < 2 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree >= 1")
            self.base = base
            self.modulus = tuple(modulus)
            self.degree = len(modulus) - 1
            self.order = base.order ** self.degree
            self.prime_degree = base.prime_degree * self.degree
        self.p = p
        self._build_tables()

    # -- construction -------------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        B, d = self.base, self.degree
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for j in range(d + 1):
                    prod[k - d + j] = B.sub(prod[k - d + j], B.mul(c, self.modulus[j]))
        return self.from_digits(prod[:d])

    def _slow_pow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return r

    def _build_tables(self):
        Q, p, n = self.order, self.p, self.prime_degree
        digits = np.array([[(c // p ** k) % p for k in range(n)] for c in range(Q)], dtype=np.int64)
        weights = p ** np.arange(n, dtype=np.int64)
        self._neg = [int(x) for x in ((-digits) % p) @ weights]
        if Q <= _ADD_TABLE_LIMIT:
            tab = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
            self._add = tab.reshape(-1).tolist()
        else:
            self._add = None
        if Q == 2:
            gen = 1
        else:
            factors = _prime_factors(Q - 1)
            for gen in range(2, Q):
                if all(self._slow_pow(gen, (Q - 1) // f) != 1 for f in factors):
                    break
            else:  # pragma: no cover - a field always has a primitive element
                raise ArithmeticError("no primitive element found; modulus not irreducible?")
        exp = [1] * (2 * (Q - 1))
        for i in range(1, 2 * (Q - 1)):
            exp[i] = self._slow_mul(exp[i - 1], gen)
        log = [0] * Q
        for i in range(Q - 1):
            log[exp[i]] = i
        if len(set(exp[:Q - 1])) != Q - 1:
            raise ValueError("modulus is not irreducible")
        self.generator = gen
        self._exp, self._log = exp, log

    # -- arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a * self.order + b]
        p, out, w = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def log(self, a: int) -> int:
        """Discrete log to the base ``self.generator``."""
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def from_int(self, n: int) -> int:
        return n % self.p

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def sqrt_all(self, a: int) -> list[int]:
        return [x for x in range(self.order) if self.mul(x, x) == a]

    # -- representations ----------------------------------------------

    @property
    def base_order(self) -> int:
        return self.base.order if self.base is not None else 1

    def digits(self, a: int) -> list[int]:
        """Coefficients over the base field, lowest first (length = degree)."""
        if self.base is None:
            return [a]
        B = self.base.order
        return [(a // B ** k) % B for k in range(self.degree)]

    def from_digits(self, ds) -> int:
        if self.base is None:
            return ds[0] % self.p if len(ds) else 0
        B, out = self.base.order, 0
        for k in range(len(ds) - 1, -1, -1):
            out = out * B + ds[k]
        return out

    def prime_coords(self, a: int) -> list[int]:
        p = self.p
        return [(a // p ** k) % p for k in range(self.prime_degree)]

    def from_prime_coords(self, cs) -> int:
        out = 0
        for c in reversed(list(cs)):
            out = out * self.p + int(c) % self.p
        return out

    def elements(self) -> range:
        return range(self.order)

    def units(self) -> range:
        return range(1, self.order)

    def format(self, a: int) -> str:
        if self.base is None:
            return str(a)
        if self.base.base is None:
            if a < self.p:
                return str(a)
            return "[" + ",".join(str(x) for x in self.digits(a)) + "]"
        return str(Poly(self.base, self.digits(a)))

    def as_dict(self) -> dict:
        out = {"p": self.p, "order": self.order}
        if self.modulus is not None:
            out["modulus"] = list(self.modulus)
        return out

    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.order}; modulus={list(self.modulus)} over GF({self.base.order}))"


@functools.lru_cache(maxsize=None)
def GF(q: int) -> FiniteField:
    """The canonical field with q elements.

    For q = p**e with e > 1 the model is F_p[u]/m(u) where m is the first
    monic irreducible of degree e when candidates are ordered by their
    coefficient tuple (c_0, ..., c_{e-1}) lexicographically.
    """
    p, e = prime_power(q)
    Fp = _prime_field(p)
    if e == 1:
        return Fp
    for tail in itertools.product(range(p), repeat=e):
        m = Poly(Fp, tuple(tail) + (1,))
        if is_irreducible(m):
            return FiniteField(p, Fp, m.coeffs)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


@functools.lru_cache(maxsize=None)
def _prime_field(p: int) -> FiniteField:
    return FiniteField(p)


def field_with_modulus(p: int, modulus) -> FiniteField:
    """F_p[u]/(modulus) for an explicit monic irreducible modulus over F_p."""
    Fp = _prime_field(p)
    m = Poly(Fp, [int(c) % p for c in modulus])
    if m.is_zero() or m.coeffs[-1] != 1:
        raise ValueError("ext modulus must be monic")
    if m.degree < 2:
        return Fp
    if not is_irreducible(m):
        raise ValueError("ext modulus is not irreducible over F_p")
    return FiniteField(p, Fp, m.coeffs)


# ---------------------------------------------------------------------------
# Polynomials over a finite field


class Poly:
    """Immutable univariate polynomial over a FiniteField, lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def T(cls, field: FiniteField) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FiniteField, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: FiniteField, n: int, c: int = 1) -> Poly:
        return cls(field, (0,) * n + (c,))

    # -- basic properties ----------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def valuation(self):
        """T-adic valuation; +inf for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return float("inf")

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        inv = self.field.inv(self.lc())
        return self.scale(inv)

    def scale(self, c: int) -> Poly:
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    # -- ring operations -----------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly(self.field, (self.field.from_int(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = F.add(out[i], x)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(x) for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly(F)
        na = [(i, x) for i, x in enumerate(self.coeffs) if x]
        nb = [(j, y) for j, y in enumerate(other.coeffs) if y]
        if len(na) * len(nb) > 4 * (len(self.coeffs) + len(other.coeffs)):
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, x in na:
                for j, y in nb:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
            return Poly(F, out)
        acc: dict[int, int] = {}
        for i, x in na:
            for j, y in nb:
                k = i + j
                acc[k] = F.add(acc.get(k, 0), F.mul(x, y))
        out = [0] * (max(acc) + 1)
        for k, v in acc.items():
            out[k] = v
        return Poly(F, out)

    __rmul__ = __mul__

    def frobenius(self, s: int) -> Poly:
        """self ** (p**s), computed coefficient-wise."""
        F = self.field
        ps = F.p ** s
        out = [0] * ((len(self.coeffs) - 1) * ps + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * ps] = F.pow(c, ps)
        return Poly(F, out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        p = self.field.p
        s = 0
        while n and n % p == 0:
            n //= p
            s += 1
        result = Poly(self.field, (1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result.frobenius(s) if s else result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv = F.inv(other.lc())
        if len(r) <= db:
            return Poly(F), self
        quo = [0] * (len(r) - db)
        b = other.coeffs
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = F.mul(c, inv)
                quo[k - db] = c
                for j in range(db + 1):
                    if b[j]:
                        r[k - db + j] = F.sub(r[k - db + j], F.mul(c, b[j]))
        return Poly(F, quo), Poly(F, r[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x: int, field: FiniteField | None = None) -> int:
        """Evaluate at x (an element of ``field``, default the coefficient field).

        When ``field`` is an extension of the coefficient field, coefficients
        are embedded as constants.
        """
        K = field or self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = K.add(K.mul(acc, x), c)
        return acc

    def derivative(self) -> Poly:
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, n: int, mod: Poly) -> Poly:
        result = Poly(self.field, (1,)) % mod
        base = self % mod
        while n:
            if n & 1:
                result = (result * base) % mod
            n >>= 1
            if n:
                base = (base * base) % mod
        return result

    # -- comparison / display ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly(self.field, (self.field.from_int(other),))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def sort_key(self):
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!s} over GF({self.field.order}))"


def format_poly(f: Poly, var: str = "T") -> str:
    """Render as ``c_k*T^k + ... + c_0`` (zero renders as ``0``)."""
    if f.is_zero():
        return "0"
    F = f.field
    terms = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        cs = F.format(c)
        if k == 0:
            terms.append(cs)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(terms)


class PolyParseError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|(\[[^\]]*\])|([A-Za-z]+)|(\^)|(\*)|([+-]))")


def parse_poly(text: str, field: FiniteField, var: str = "T") -> Poly:
    """Parse the text format produced by :func:`format_poly`.

    Coefficients are integers (reduced mod p) or ``[a_0,a_1,...]`` lists
    giving an element of a non-prime F_q in its defining basis.
    """
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            raise PolyParseError("unexpected character", pos, text)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        kind = m.lastindex
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    if not tokens:
        raise PolyParseError("empty polynomial", 0, text)

    def coef_value(tok, at):
        if tok.startswith("["):
            body = tok[1:-1].strip()
            try:
                parts = [int(x) for x in body.split(",")] if body else []
            except ValueError:
                raise PolyParseError("bad coefficient list", at, text) from None
            if len(parts) > field.prime_degree:
                raise PolyParseError("coefficient list longer than field degree", at, text)
            return field.from_prime_coords(parts + [0] * (field.prime_degree - len(parts)))
        return field.from_int(int(tok))

    result = Poly(field)
    i = 0
    n = len(tokens)
    first = True
    while i < n:
        sign = 1
        if tokens[i][0] == 6:
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolyParseError("expected '+' or '-'", tokens[i][2], text)
        first = False
        if i >= n:
            raise PolyParseError("dangling sign", len(stripped), text)
        coef = 1
        kind, val, at = tokens[i]
        if kind in (1, 2):
            coef = coef_value(val, at)
            i += 1
            if i < n and tokens[i][0] == 5:
                i += 1
                if i >= n or tokens[i][0] != 3:
                    raise PolyParseError(f"expected '{var}' after '*'", tokens[i][2] if i < n else len(stripped), text)
            elif i < n and tokens[i][0] == 3:
                raise PolyParseError("missing '*' between coefficient and variable", tokens[i][2], text)
        exp = 0
        if i < n and tokens[i][0] == 3:
            if tokens[i][1] != var:
                raise PolyParseError(f"unknown variable {tokens[i][1]!r}", tokens[i][2], text)
            exp = 1
            i += 1
            if i < n and tokens[i][0] == 4:
                i += 1
                if i >= n or tokens[i][0] != 1:
                    raise PolyParseError("expected exponent after '^'", tokens[i][2] if i < n else len(stripped), text)
                exp = int(tokens[i][1])
                i += 1
        elif kind not in (1, 2):
            raise PolyParseError("expected coefficient or variable", at, text)
        if sign < 0:
            coef = field.neg(coef)
        result = result + Poly.monomial(field, exp, coef)
    return result


# ---------------------------------------------------------------------------
# gcd, irreducibility, primes


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, b) = monic(b)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd undefined for two zero polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with g = s*a + t*b monic."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd undefined for two zero polynomials")
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly(F, (1,)), Poly(F)
    t0, t1 = Poly(F), Poly(F, (1,))
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    inv = F.inv(r0.lc())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def is_irreducible(f: Poly) -> bool:
    """Deterministic irreducibility test over the coefficient field."""
    if f.is_zero() or f.degree < 1:
        raise ValueError("irreducibility is undefined for constants")
    n = f.degree
    if n == 1:
        return True
    Q = f.field.order
    x = Poly.T(f.field)
    h = x
    for _ in range(n // 2):
        h = h.powmod(Q, f)
        if poly_gcd(f, h - x).degree > 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeIdeal:
    """A nonzero prime of A, stored as its monic irreducible generator."""

    generator: Poly

    def __post_init__(self):
        g = self.generator
        if g.is_zero() or g.degree < 1 or g.lc() != 1:
            raise ValueError("prime generator must be monic of degree >= 1")

    @classmethod
    def checked(cls, g: Poly) -> PrimeIdeal:
        g = g.monic()
        if not is_irreducible(g):
            raise ValueError(f"{g} is not irreducible")
        return cls(g)

    @property
    def degree(self) -> int:
        return self.generator.degree

    @property
    def field(self) -> FiniteField:
        return self.generator.field

    @property
    def residue_field(self) -> ResidueField:
        return residue_field(self)

    def is_T(self) -> bool:
        return self.generator.coeffs == (0, 1)

    def __str__(self):
        return f"({self.generator})"


class ResidueField(FiniteField):
    """F_l = A/(l) with conversions to and from A."""

    def __init__(self, ideal: PrimeIdeal):
        self.ideal = ideal
        Fq = ideal.field
        super().__init__(Fq.p, Fq, ideal.generator.coeffs)
        if self.degree >= 2:
            self.t = self.from_digits([0, 1] + [0] * (self.degree - 2))
        else:
            self.t = Fq.neg(ideal.generator.coeffs[0])

    def reduce(self, a: Poly) -> int:
        """The residue of a modulo the ideal, as a field element."""
        d = self.degree
        if len(a.coeffs) <= d:
            return self.from_digits(list(a.coeffs) + [0] * (d - len(a.coeffs)))
        if sum(1 for c in a.coeffs if c) * 8 < len(a.coeffs):
            acc = 0
            for i, c in enumerate(a.coeffs):
                if c:
                    acc = self.add(acc, self.mul(c, self.pow(self.t, i)))
            return acc
        return a(self.t, self)

    def lift(self, x: int) -> Poly:
        return Poly(self.base, self.digits(x))

    def format(self, a: int) -> str:
        return str(self.lift(a))


@functools.lru_cache(maxsize=None)
def residue_field(ideal: PrimeIdeal) -> ResidueField:
    return ResidueField(ideal)


def residue_reduce(a: Poly, ideal: PrimeIdeal) -> int:
    """Element of A/(l) represented in its residue field."""
    return ideal.residue_field.reduce(a)


def monic_polys(F: FiniteField, degree: int):
    """All monic polynomials of the given degree, reading-order lexicographic."""
    for tail in itertools.product(range(F.order), repeat=degree):
        yield Poly(F, tuple(reversed(tail)) + (1,))


def enum_primes(F: FiniteField, max_degree: int, exclude=()) -> list[PrimeIdeal]:
    """Monic irreducibles of degree <= max_degree ordered by (degree, coefficients)."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    excluded = {P.generator for P in exclude}
    out = []
    for d in range(1, max_degree + 1):
        for f in monic_polys(F, d):
            if f not in excluded and is_irreducible(f):
                out.append(PrimeIdeal(f))
    return out


def count_monic_irreducibles(q: int, n: int) -> int:
    """Gauss's necklace count (1/n) sum_{d|n} mu(d) q^(n/d)."""

    def mobius(m):
        fs = _prime_factors(m)
        for f in fs:
            if m % (f * f) == 0:
                return 0
        return -1 if len(fs) % 2 else 1

    return sum(mobius(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0) // n
