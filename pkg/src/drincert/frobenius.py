"""Characteristic polynomials of Frobenius for reductions of Drinfeld modules.

Convention: for a prime P of degree d where phi has good reduction psi,
the Frobenius pi = tau^d satisfies

    pi^r + psi_{a_1} pi^(r-1) + ... + psi_{a_{r-1}} pi - mu * psi_P = 0,

and P(x) = x^r + a_1 x^(r-1) + ... + a_{r-1} x - mu*P is the characteristic
polynomial of Frob_P on every torsion module phi[a] with P not dividing a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteField, Poly, PrimeIdeal, poly_xgcd, prime_power
from .drinfeld import DrinfeldModule, ReducedModule, horner_phi, reduce_at
from .extfield import matmul_mod, rank_mod, solve_mod
from .skew import SkewPoly, linearized_kernel


class CharpolyDegenerate(ArithmeticError):
    pass


@dataclass(frozen=True)
class FrobCharPoly:
    """x^r + a_1 x^(r-1) + ... + a_{r-1} x - mu*P over A."""

    a: tuple  # (a_1, ..., a_{r-1}) as Polys
    mu: int  # unit of F_q
    prime: PrimeIdeal

    @property
    def rank(self) -> int:
        return len(self.a) + 1

    @property
    def a1(self) -> Poly:
        return self.a[0]

    @property
    def a2(self) -> Poly:
        return self.a[1]

    @property
    def constant(self) -> Poly:
        return -(self.prime.generator.scale(self.mu))

    def coefficients(self) -> list[Poly]:
        """Coefficients lowest degree first (monic, length rank+1)."""
        F = self.prime.field
        return [self.constant] + list(reversed(self.a)) + [Poly(F, (1,))]

    def __str__(self):
        r = self.rank
        parts = [f"x^{r}" if r > 1 else "x"]
        for i, c in enumerate(self.a, start=1):
            k = r - i
            mono = "x" if k == 1 else f"x^{k}"
            if not c.is_zero():
                parts.append(f"({c})*{mono}")
        parts.append(f"({self.constant})")
        return " + ".join(parts)


def frob_charpoly_deg1(phi: DrinfeldModule, c: int) -> FrobCharPoly:
    """Closed form at P = (T - c): a_1 = 1, a_2 = g1(c)^(q-1), mu = 1."""
    if phi.g1 is None:
        raise ValueError("closed form applies to the rank-3 family only")
    F = phi.field
    if c == 0:
        raise ValueError("bad reduction at (T): c must be nonzero")
    q = F.order
    a2 = F.pow(phi.g1(c), q - 1)
    P = PrimeIdeal(Poly.T(F) - Poly(F, (c,)))
    return FrobCharPoly((Poly(F, (1,)), Poly(F, (a2,))), 1, P)


def _degree_bounds(rank: int, d: int) -> list[int]:
    return [-(-i * d // rank) for i in range(1, rank)]


def frob_charpoly_solve(psi: ReducedModule) -> FrobCharPoly:
    """Solve the Frobenius relation in K{tau} for the coefficients a_i and mu.

    Every unknown enters F_p-linearly once an F_q-coefficient is written in
    the basis 1, u, ..., u^(e-1), so the relation becomes a linear system
    over the prime field.  A unique solution is required.
    """
    if not psi.is_good:
        raise ValueError(f"reduction at {psi.prime} is not good")
    K = psi.residue_field
    Fq = psi.source.field
    p, e = prime_power(Fq.order)
    d = psi.prime.degree
    r = psi.rank
    R = psi.psi_T.ring
    bounds = _degree_bounds(r, d)
    maxj = max(bounds + [d])
    powers = [SkewPoly(R, [1])]
    for _ in range(maxj):
        powers.append(psi.psi_T * powers[-1])
    psi_P = SkewPoly(R)
    for k, c in enumerate(psi.prime.generator.coeffs):
        if c:
            psi_P = psi_P + powers[k].scale(c)

    def shifted(f: SkewPoly, m: int) -> list[int]:
        return [0] * m + list(f.coeffs)

    columns: list[list[int]] = []
    labels = []
    for i in range(1, r):
        for j in range(bounds[i - 1] + 1):
            base = shifted(powers[j], d * (r - i))
            for a in range(e):
                ua = p ** a
                columns.append([K.mul(ua, x) for x in base])
                labels.append((i, j, a))
    for a in range(e):
        ua = p ** a
        columns.append([K.neg(K.mul(ua, x)) for x in psi_P.coeffs])
        labels.append((0, 0, a))
    rhs_skew = [0] * (d * r) + [K.neg(1)]
    n_terms = max(len(c) for c in columns + [rhs_skew])

    def flatten(cs):
        cs = list(cs) + [0] * (n_terms - len(cs))
        out = []
        for x in cs:
            out.extend(K.prime_coords(x))
        return out

    mat = np.array([flatten(c) for c in columns], dtype=np.int64).T
    rhs = np.array(flatten(rhs_skew), dtype=np.int64)
    sol, nullity = solve_mod(mat, rhs, p)
    if sol is None or nullity:
        raise CharpolyDegenerate("internal: charpoly system degenerate")
    coeff = {}
    for (i, j, a), y in zip(labels, sol):
        key = (i, j)
        coeff.setdefault(key, [0] * e)[a] = int(y)
    a_polys = []
    for i in range(1, r):
        cs = [Fq.from_prime_coords(coeff[(i, j)]) for j in range(bounds[i - 1] + 1)]
        a_polys.append(Poly(Fq, cs))
    mu = Fq.from_prime_coords(coeff[(0, 0)])
    if mu == 0:
        raise CharpolyDegenerate("internal: charpoly system degenerate")
    return FrobCharPoly(tuple(a_polys), mu, psi.prime)


def frob_charpoly(phi: DrinfeldModule, P: PrimeIdeal) -> FrobCharPoly:
    """Frobenius polynomial of phi at P, memoized on the module."""
    cache = phi.__dict__.setdefault("_charpoly_cache", {})
    if P not in cache:
        cache[P] = frob_charpoly_solve(reduce_at(phi, P))
    return cache[P]


# -- reductions modulo an ideal ---------------------------------------------


def _inverse_mod(x: Poly, modulus: Poly) -> Poly | None:
    if x.is_zero():
        return None
    g, s, _ = poly_xgcd(x, modulus)
    if g.degree != 0:
        return None
    return s % modulus


@dataclass(frozen=True)
class ModCharPoly:
    """A monic characteristic polynomial reduced into A/(m)."""

    modulus: Poly
    coeffs: tuple  # Polys reduced mod m, lowest degree first, monic

    @property
    def rank(self) -> int:
        return len(self.coeffs) - 1

    @property
    def trace(self) -> Poly:
        return (-self.coeffs[-2]) % self.modulus

    @property
    def det(self) -> Poly:
        c0 = self.coeffs[0]
        return (c0 if self.rank % 2 == 0 else -c0) % self.modulus

    def tr3_over_det(self) -> Poly | None:
        inv = _inverse_mod(self.det, self.modulus)
        return None if inv is None else (self.trace ** 3 * inv) % self.modulus

    def det_over_tr3(self) -> Poly | None:
        inv = _inverse_mod(self.trace ** 3 % self.modulus, self.modulus)
        return None if inv is None else (self.det * inv) % self.modulus

    def inverse(self) -> ModCharPoly:
        """Characteristic polynomial of the inverse matrix (rank 3)."""
        if self.rank != 3:
            raise ValueError("inverse characteristic polynomial implemented for rank 3")
        c0, a2, a1, _ = self.coeffs
        inv = _inverse_mod(c0, self.modulus)
        if inv is None:
            raise ZeroDivisionError("determinant is not a unit")
        m = self.modulus
        F = m.field
        return ModCharPoly(m, ((inv) % m, (a1 * inv) % m, (a2 * inv) % m, Poly(F, (1,))))

    def in_field(self, L: PrimeIdeal) -> list[int]:
        """Coefficients as elements of the residue field of L (m must be L's generator)."""
        if L.generator != self.modulus:
            raise ValueError("modulus is not the generator of the given prime")
        K = L.residue_field
        return [K.reduce(c) for c in self.coeffs]

    def __str__(self):
        from .algebra import format_poly

        parts = []
        for k in range(self.rank, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            cs = format_poly(c)
            if not mono:
                parts.append(cs)
            else:
                parts.append(mono if cs == "1" else f"({cs})*{mono}")
        return " + ".join(parts)


def charpoly_mod(P: FrobCharPoly, a: Poly) -> ModCharPoly:
    if isinstance(a, PrimeIdeal):
        a = a.generator
    return ModCharPoly(a, tuple(c % a for c in P.coefficients()))


# -- independent oracle: Frobenius acting on torsion points -------------------


@dataclass
class FrobMatrix:
    """Matrix of x -> x^|F_P| on phi[l] in an F_l-basis."""

    field: FiniteField  # F_l
    rows: list  # r x r element codes of F_l
    splitting_degree: int
    ext_degree: int

    def charpoly(self) -> list[int]:
        """Monic characteristic polynomial over F_l, lowest degree first."""
        return matrix_charpoly(self.field, self.rows)

    def det(self) -> int:
        return matrix_det(self.field, self.rows)

    def trace(self) -> int:
        F = self.field
        t = 0
        for i in range(len(self.rows)):
            t = F.add(t, self.rows[i][i])
        return t


def matrix_det(F: FiniteField, rows) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = F.neg(det)
        det = F.mul(det, m[c][c])
        inv = F.inv(m[c][c])
        for i in range(c + 1, n):
            f = F.mul(m[i][c], inv)
            if f:
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
    return det


def matrix_charpoly(F: FiniteField, rows) -> list[int]:
    """det(xI - M) for M of size <= 3, lowest degree first."""
    n = len(rows)
    if n == 1:
        return [F.neg(rows[0][0]), 1]
    tr = 0
    for i in range(n):
        tr = F.add(tr, rows[i][i])
    if n == 2:
        return [matrix_det(F, rows), F.neg(tr), 1]
    if n == 3:
        s2 = 0
        for i in range(3):
            for j in range(i + 1, 3):
                minor = F.sub(F.mul(rows[i][i], rows[j][j]), F.mul(rows[i][j], rows[j][i]))
                s2 = F.add(s2, minor)
        return [F.neg(matrix_det(F, rows)), s2, F.neg(tr), 1]
    raise NotImplementedError("characteristic polynomial implemented for size <= 3")


def _coords(V: np.ndarray, W: np.ndarray, p: int) -> np.ndarray:
    """C with V C = W, for V of full column rank."""
    n = V.shape[1]
    out = np.zeros((n, W.shape[1]), dtype=np.int64)
    for j in range(W.shape[1]):
        x, nullity = solve_mod(V, W[:, j], p)
        if x is None or nullity:
            raise ArithmeticError("vector not in the span of the basis")
        out[:, j] = x
    return out


def frob_matrix_oracle(psi: ReducedModule, L: PrimeIdeal) -> FrobMatrix:
    """Frobenius on the L-torsion of psi, computed from explicit torsion points."""
    if not psi.is_good:
        raise ValueError(f"reduction at {psi.prime} is not good")
    if L.generator == psi.prime.generator:
        raise ValueError("oracle needs L different from the reduction prime")
    K = psi.residue_field
    Fq = psi.source.field
    p, e = prime_power(Fq.order)
    d = psi.prime.degree
    r = psi.rank
    f = horner_phi(psi.psi_T, L.generator)
    kb = linearized_kernel(f)
    dl = L.degree
    if kb.fp_basis.shape[1] != e * r * dl:
        raise ArithmeticError("torsion module has the wrong size")
    ext = kb.ext
    V = kb.fp_basis

    def restrict(op):
        return _coords(V, matmul_mod(op, V, p), p)

    t_op = np.zeros((ext.m, ext.m), dtype=np.int64)
    for i, c in enumerate(psi.psi_T.coeffs):
        if c:
            mc = ext.mul_matrix(ext.element(K, kb.embedding, c))
            t_op = (t_op + matmul_mod(mc, ext.frob_matrix(e * i), p)) % p
    Tm = restrict(t_op)
    U = restrict(kb.scalar_matrix()) if e > 1 else np.eye(V.shape[1], dtype=np.int64)
    Fr = restrict(ext.frob_matrix(e * d))

    n = V.shape[1]
    blocks = []
    span = np.zeros((n, 0), dtype=np.int64)
    for j in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[j] = 1
        block = []
        tb = v
        for _b in range(dl):
            ua = tb
            for _a in range(e):
                block.append(ua)
                ua = matmul_mod(U, ua.reshape(-1, 1), p)[:, 0]
            tb = matmul_mod(Tm, tb.reshape(-1, 1), p)[:, 0]
        cand = np.hstack([span, np.stack(block, axis=1)])
        if rank_mod(cand.T, p) == cand.shape[1]:
            span = cand
            blocks.append(v)
        if len(blocks) == r:
            break
    if len(blocks) != r:
        raise ArithmeticError("could not find an F_l-basis of the torsion module")
    images = matmul_mod(Fr, np.stack(blocks, axis=1), p)
    C = _coords(span, images, p)
    FL = L.residue_field
    width = e * dl
    rows = [[FL.from_prime_coords(C[k2 * width:(k2 + 1) * width, k]) for k in range(r)] for k2 in range(r)]
    return FrobMatrix(FL, rows, kb.splitting_degree, ext.m)
