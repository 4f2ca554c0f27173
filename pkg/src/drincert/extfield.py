"""Prime-field linear algebra and explicit extensions L = F_p[y]/(H).

Elements of L are int64 vectors of length M = deg H (coefficients of
1, y, ..., y^{M-1}).  The Frobenius x -> x^p is an F_p-linear map on L and is
kept as an M x M matrix; everything the torsion oracle needs reduces to
products of such matrices and nullspaces.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from . import backend

MAX_EXT_DEGREE = 2000


class ExtensionOverflow(RuntimeError):
    """The required splitting field is too large for dense linear algebra."""


# -- matrices over F_p ---------------------------------------------------


def matmul_mod(a, b, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if (p - 1) ** 2 * a.shape[-1] < 2 ** 52:
        prod = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.rint(prod).astype(np.int64) % p
    return (a.astype(object) @ b.astype(object) % p).astype(np.int64)


def matpow_mod(a, n: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    base = np.asarray(a, dtype=np.int64) % p
    while n:
        if n & 1:
            result = matmul_mod(result, base, p)
        n >>= 1
        if n:
            base = matmul_mod(base, base, p)
    return result


def rank_mod(a, p: int) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(backend.rref(np.ascontiguousarray(a % p), p)[1])


def nullspace_mod(a, p: int) -> np.ndarray:
    """Columns form a basis of {v : a v = 0} over F_p."""
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    red, pivots = backend.rref(np.ascontiguousarray(a), p)
    red = np.asarray(red)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-red[r, f]) % p
    return basis


def solve_mod(a, b, p: int):
    """Solve a x = b over F_p.

    Returns (x, nullity) with x one solution (None if inconsistent) and
    nullity the dimension of the solution space of the homogeneous system.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1) % p
    n = a.shape[1]
    aug = np.ascontiguousarray(np.hstack([a, b]))
    red, pivots = backend.rref(aug, p)
    red = np.asarray(red)
    if n in pivots:
        return None, n - len(pivots) + 1
    x = np.zeros(n, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = red[r, n]
    return x, n - len(pivots)


def inverse_mod(a, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.ascontiguousarray(np.hstack([np.asarray(a, dtype=np.int64) % p, np.eye(n, dtype=np.int64)]))
    red, pivots = backend.rref(aug, p)
    if list(pivots[:n]) != list(range(n)) or (len(pivots) > n and pivots[n] < n):
        raise ZeroDivisionError("matrix is singular")
    return np.asarray(red)[:, n:] % p


# -- irreducible polynomials over F_p -----------------------------------


def _x_power_p(v, h, p):
    """v**p mod h via square-and-multiply."""
    result = None
    base = v
    n = p
    while n:
        if n & 1:
            result = base if result is None else backend.polmulmod(result, base, h, p)
        n >>= 1
        if n:
            base = backend.polmulmod(base, base, h, p)
    return np.asarray(result, dtype=np.int64)


def _has_small_factor(h, p: int) -> bool:
    """Factor of degree i with p^i < deg h, found by folding h mod x^(p^i) - x."""
    m = len(h) - 1
    i = 1
    while p ** i < m and 2 * i <= m:
        n = p ** i
        folded = np.zeros(n, dtype=np.int64)
        folded[:n] = h[:n]
        # x^e == x^(e - (n - 1)) modulo x^n - x, for e >= n
        idx = np.arange(n, m + 1)
        idx = (idx - 1) % (n - 1) + 1
        np.add.at(folded, idx, h[n:])
        xn = np.zeros(n + 1, dtype=np.int64)
        xn[n] = 1
        xn[1] = p - 1
        if len(backend.polgcd(xn, folded % p, p)) > 1:
            return True
        i += 1
    return False


def is_irreducible_prime(h, p: int) -> bool:
    """Ben-Or test for a monic h over F_p (coefficients lowest first).

    x^(p^i) mod h is advanced by the Frobenius matrix of h; the gcds with
    x^(p^i) - x are taken one by one for small i and in batches after that.
    """
    h = np.ascontiguousarray(np.asarray(h, dtype=np.int64) % p)
    m = len(h) - 1
    if m <= 1:
        return m == 1
    if _has_small_factor(h, p):
        return False
    frob = np.asarray(backend.frobmat(h, p), dtype=np.float64)
    cur = np.zeros(m, dtype=np.int64)
    cur[1] = 1
    acc = None
    pending = 0
    for i in range(1, m // 2 + 1):
        cur = np.rint(frob @ cur).astype(np.int64) % p
        diff = cur.copy()
        diff[1] = (diff[1] - 1) % p
        if p ** i < m:
            continue  # already covered by the small-factor sieve
        if i <= 6:
            if len(backend.polgcd(h, diff, p)) > 1:
                return False
            continue
        acc = diff if acc is None else np.asarray(backend.polmulmod(acc, diff, h, p))
        pending += 1
        if pending == 8 or i == m // 2:
            if len(backend.polgcd(h, acc, p)) > 1:
                return False
            acc, pending = None, 0
    return True


@functools.lru_cache(maxsize=None)
def irreducible_prime_poly(p: int, m: int) -> tuple[int, ...]:
    """A monic irreducible of degree m over F_p, chosen by seeded search."""
    if m > MAX_EXT_DEGREE:
        raise ExtensionOverflow(f"extension degree {m} exceeds cap {MAX_EXT_DEGREE}")
    if m == 1:
        return (0, 1)
    if p ** m <= 4096:
        for tail in itertools.product(range(p), repeat=m):
            h = np.array(tail[::-1] + (1,), dtype=np.int64)
            if h[0] and is_irreducible_prime(h, p):
                return tuple(int(c) for c in h)
    rng = np.random.default_rng(1000003 * p + m)
    while True:
        h = np.concatenate([rng.integers(0, p, m), [1]]).astype(np.int64)
        if h[0] and is_irreducible_prime(h, p):
            return tuple(int(c) for c in h)


# -- the extension field -------------------------------------------------


class PrimeExtension:
    """L = F_p[y]/(H) with Frobenius and multiplication matrices."""

    def __init__(self, p: int, m: int):
        self.p, self.m = p, m
        self.h = np.array(irreducible_prime_poly(p, m), dtype=np.int64)
        self._frob_cache: dict[int, np.ndarray] = {}
        self._embed_cache: dict[int, np.ndarray] = {}

    @property
    def order(self) -> int:
        return self.p ** self.m

    def one(self) -> np.ndarray:
        v = np.zeros(self.m, dtype=np.int64)
        v[0] = 1
        return v

    def gen(self) -> np.ndarray:
        v = np.zeros(self.m, dtype=np.int64)
        v[1 % self.m] = 1 if self.m > 1 else int(-self.h[0] % self.p)
        return v

    def mul(self, a, b) -> np.ndarray:
        if self.m == 1:
            return np.array([int(a[0]) * int(b[0]) % self.p], dtype=np.int64)
        return np.asarray(backend.polmulmod(np.ascontiguousarray(a, dtype=np.int64),
                                            np.ascontiguousarray(b, dtype=np.int64), self.h, self.p))

    def mul_matrix(self, c) -> np.ndarray:
        """Matrix of x -> c*x."""
        m, p, h = self.m, self.p, self.h
        out = np.zeros((m, m), dtype=np.int64)
        col = np.asarray(c, dtype=np.int64) % p
        for j in range(m):
            out[:, j] = col
            top = col[-1]
            col = np.concatenate([[0], col[:-1]])
            if top:
                col = (col - top * h[:m]) % p
        return out

    def frob_matrix(self, s: int = 1) -> np.ndarray:
        """Matrix of x -> x^(p^s)."""
        s %= self.m
        if s not in self._frob_cache:
            if s == 0:
                self._frob_cache[0] = np.eye(self.m, dtype=np.int64)
            elif s == 1:
                self._frob_cache[1] = np.asarray(backend.frobmat(self.h, self.p))
            else:
                self._frob_cache[s] = matpow_mod(self.frob_matrix(1), s, self.p)
        return self._frob_cache[s]

    def _powers_matrix(self, g) -> np.ndarray:
        cols = [self.one()]
        for _ in range(1, self.m):
            cols.append(self.mul(cols[-1], g))
        return np.stack(cols, axis=1) % self.p

    def subfield_basis(self, n: int) -> np.ndarray:
        """F_p-basis (columns) of the subfield of size p^n."""
        if self.m % n:
            raise ValueError(f"no subfield of degree {n} in an extension of degree {self.m}")
        a = (self.frob_matrix(n) - np.eye(self.m, dtype=np.int64)) % self.p
        basis = nullspace_mod(a, self.p)
        assert basis.shape[1] == n
        return basis

    def embed_field(self, K) -> np.ndarray:
        """Matrix E sending prime coordinates of K-elements into L.

        K is a :class:`~drincert.algebra.FiniteField` tower; each level's
        generator is sent to a root of its modulus found in L.
        """
        key = id(K)
        if key in self._embed_cache:
            return self._embed_cache[key]
        p = self.p
        if K.base is None:
            e = self.one().reshape(-1, 1)
        else:
            eb = self.embed_field(K.base)
            theta = self._find_root(K, eb)
            blocks = [eb]
            cur = eb
            mt = self.mul_matrix(theta)
            for _ in range(1, K.degree):
                cur = matmul_mod(mt, cur, p)
                blocks.append(cur)
            e = np.hstack(blocks) % p
        self._embed_cache[key] = e
        return e

    def element(self, K, E, code: int) -> np.ndarray:
        return matmul_mod(E, np.array(K.prime_coords(code), dtype=np.int64).reshape(-1, 1), self.p)[:, 0]

    def _find_root(self, K, eb) -> np.ndarray:
        p = self.p
        basis = self.subfield_basis(K.prime_degree)
        coeffs = [self.element(K.base, eb, c) for c in K.modulus]
        for digits in itertools.product(range(p), repeat=basis.shape[1]):
            x = matmul_mod(basis, np.array(digits, dtype=np.int64).reshape(-1, 1), p)[:, 0]
            acc = np.zeros(self.m, dtype=np.int64)
            for c in reversed(coeffs):
                acc = (self.mul(acc, x) + c) % p
            if not acc.any():
                return x
        raise ArithmeticError("modulus has no root in the extension")
