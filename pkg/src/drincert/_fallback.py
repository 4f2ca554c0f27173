"""Pure-Python (numpy) versions of the compiled kernels in ``_kernels.pyx``."""

from __future__ import annotations

import numpy as np


def polmulmod(a, b, h, p):
    """(a * b) mod h over F_p; h monic of degree M, a and b of length M."""
    m = len(h) - 1
    prod = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % p
    prod = np.concatenate([prod, np.zeros(max(0, 2 * m - len(prod)), dtype=np.int64)])
    h = np.asarray(h, dtype=np.int64)
    for k in range(2 * m - 2, m - 1, -1):
        c = prod[k] % p
        if c:
            prod[k - m:k + 1] = (prod[k - m:k + 1] - c * h) % p
    return prod[:m] % p


def _trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def polgcd(a_in, b_in, p):
    """Monic gcd of two coefficient arrays (lowest degree first) over F_p."""
    a = _trim(np.array(a_in, dtype=np.int64) % p)
    b = _trim(np.array(b_in, dtype=np.int64) % p)
    if len(a) < len(b):
        a, b = b, a
    while len(b):
        inv = pow(int(b[-1]), -1, p)
        a = a.copy()
        db = len(b) - 1
        while len(a) >= len(b):
            c = (int(a[-1]) * inv) % p
            shift = len(a) - 1 - db
            a[shift:] = (a[shift:] - c * b) % p
            a = _trim(a)
        a, b = b, a
    if not len(a):
        return np.zeros(0, dtype=np.int64)
    return (a * pow(int(a[-1]), -1, p)) % p


def frobmat(h, p):
    """Matrix whose column j is x^(j*p) mod h over F_p (h monic of degree M)."""
    h = np.asarray(h, dtype=np.int64)
    m = len(h) - 1
    out = np.zeros((m, m), dtype=np.int64)
    out[0, 0] = 1
    cur = np.zeros(m, dtype=np.int64)
    cur[0] = 1
    for s in range(1, p * (m - 1) + 1):
        top = cur[-1]
        cur = np.concatenate([[0], cur[:-1]])
        if top:
            cur = (cur - top * h[:m]) % p
        if s % p == 0:
            out[:, s // p] = cur
    return out


def rref(mat_in, p):
    """Reduced row echelon form over F_p. Returns (matrix, pivot columns)."""
    mat = np.array(mat_in, dtype=np.int64) % p
    nr, nc = mat.shape
    pivots = []
    r = 0
    for col in range(nc):
        if r >= nr:
            break
        nz = np.nonzero(mat[r:, col])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            mat[[r, piv]] = mat[[piv, r]]
        mat[r] = (mat[r] * pow(int(mat[r, col]), -1, p)) % p
        factors = mat[:, col].copy()
        factors[r] = 0
        mat = (mat - np.outer(factors, mat[r])) % p
        pivots.append(col)
        r += 1
    return mat, pivots


def _decode3(x, q):
    out = []
    for _ in range(9):
        out.append(x % q)
        x //= q
    return out


def gl3_mul(x, y, q):
    """Product of two 3x3 matrices over a prime field, each encoded in base q."""
    a = _decode3(x, q)
    b = _decode3(y, q)
    code = 0
    for idx in range(8, -1, -1):
        i, j = divmod(idx, 3)
        code = code * q + (a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]) % q
    return code


def gl3_closure(gens, q):
    """Sorted elements of the subgroup generated by ``gens`` (prime q)."""
    ident = 1 + q ** 4 + q ** 8
    seen = {ident}
    frontier = [ident]
    gens = [int(g) for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = gl3_mul(x, g, q)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return sorted(seen)
