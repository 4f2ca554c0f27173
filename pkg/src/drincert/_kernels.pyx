# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for prime-field polynomial and matrix arithmetic.

Every function here has a drop-in twin in ``_fallback.py``; the two are
selected between in ``backend.py``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _inv(int64_t a, int64_t p):
    cdef int64_t t = 0, newt = 1, r = p, newr = a % p, qq, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        qq = r // newr
        tmp = t - qq * newt
        t = newt
        newt = tmp
        tmp = r - qq * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def polmulmod(const int64_t[::1] a, const int64_t[::1] b,
              const int64_t[::1] h, int64_t p):
    """(a * b) mod h over F_p; h monic of degree M, a and b of length M."""
    cdef Py_ssize_t m = h.shape[0] - 1
    cdef Py_ssize_t i, j, k
    cdef int64_t ai, c
    # partial sums stay below 4*m*p^2; flush when that could overflow
    cdef Py_ssize_t flush = max(1, <Py_ssize_t>((1 << 60) // (4 * p * p + 1)))
    cdef cnp.ndarray[int64_t, ndim=1] prod = np.zeros(2 * m, dtype=np.int64)
    cdef int64_t[::1] pr = prod
    for i in range(m):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(m):
            pr[i + j] += ai * b[j]
        if i % flush == flush - 1:
            for k in range(2 * m):
                pr[k] %= p
    for k in range(2 * m):
        pr[k] %= p
    for k in range(2 * m - 2, m - 1, -1):
        c = pr[k] % p
        if c == 0:
            continue
        c = p - c
        for j in range(m):
            pr[k - m + j] += c * h[j]
        if (2 * m - 2 - k) % flush == flush - 1:
            for j in range(k):
                pr[j] %= p
    out = np.empty(m, dtype=np.int64)
    cdef int64_t[::1] o = out
    for k in range(m):
        o[k] = pr[k] % p
    return out


def polgcd(a_in, b_in, int64_t p):
    """Monic gcd of two coefficient arrays (lowest degree first) over F_p."""
    cdef cnp.ndarray[int64_t, ndim=1] a = np.array(a_in, dtype=np.int64) % p
    cdef cnp.ndarray[int64_t, ndim=1] b = np.array(b_in, dtype=np.int64) % p
    cdef cnp.ndarray[int64_t, ndim=1] tmp
    cdef int64_t[::1] av, bv
    cdef Py_ssize_t da = a.shape[0] - 1, db = b.shape[0] - 1, i, shift, steps
    cdef int64_t c, inv
    cdef Py_ssize_t flush = max(1, <Py_ssize_t>((1 << 60) // (p * p + 1)))
    while da >= 0 and a[da] == 0:
        da -= 1
    while db >= 0 and b[db] == 0:
        db -= 1
    if da < db:
        a, b = b, a
        da, db = db, da
    while db >= 0:
        av = a
        bv = b
        inv = _inv(bv[db], p)
        steps = 0
        while da >= db:
            c = ((av[da] % p) * inv) % p
            shift = da - db
            if c != 0:
                c = p - c
                for i in range(db + 1):
                    av[shift + i] += c * bv[i]
                steps += 1
                if steps % flush == 0:
                    for i in range(da + 1):
                        av[i] %= p
            av[da] %= p
            while da >= 0 and av[da] % p == 0:
                da -= 1
        for i in range(da + 1 if da >= 0 else 0):
            av[i] %= p
        tmp = a
        a = b
        b = tmp
        i = da
        da = db
        db = i
    if da < 0:
        return np.zeros(0, dtype=np.int64)
    inv = _inv(a[da], p)
    out = np.empty(da + 1, dtype=np.int64)
    for i in range(da + 1):
        out[i] = (a[i] * inv) % p
    return out


def frobmat(const int64_t[::1] h, int64_t p):
    """Matrix whose column j is x^(j*p) mod h over F_p (h monic of degree M)."""
    cdef Py_ssize_t m = h.shape[0] - 1
    cdef Py_ssize_t s, j, off = 0, col = 1
    cdef int64_t top
    cdef cnp.ndarray[int64_t, ndim=2] out = np.zeros((m, m), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    # circular buffer: coefficient of x^j lives at buf[(j + off) % m]
    cdef cnp.ndarray[int64_t, ndim=1] buf_arr = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] buf = buf_arr
    cdef Py_ssize_t flush = max(1, <Py_ssize_t>((1 << 60) // (p * p + 1)))
    o[0, 0] = 1
    if m == 1:
        return out
    buf[0] = 1
    for s in range(1, p * (m - 1) + 1):
        # multiply by x: the old top coefficient wraps into slot 0
        off = off - 1 if off > 0 else m - 1
        top = buf[off] % p
        buf[off] = 0
        if top:
            top = p - top
            for j in range(m - off):
                buf[off + j] += top * h[j]
            for j in range(m - off, m):
                buf[j - (m - off)] += top * h[j]
        if s % flush == 0:
            for j in range(m):
                buf[j] %= p
        if s % p == 0:
            for j in range(m):
                o[j, col] = buf[(j + off) % m] % p
            col += 1
    return out


def rref(mat_in, int64_t p):
    """Reduced row echelon form over F_p. Returns (matrix, pivot columns)."""
    cdef cnp.ndarray[int64_t, ndim=2] mat = np.array(mat_in, dtype=np.int64) % p
    cdef Py_ssize_t nr = mat.shape[0], nc = mat.shape[1]
    cdef Py_ssize_t r = 0, col, i, j, piv
    cdef int64_t inv, f
    cdef int64_t[:, ::1] m = mat
    pivots = []
    for col in range(nc):
        if r >= nr:
            break
        piv = -1
        for i in range(r, nr):
            if m[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(nc):
                f = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = f
        inv = _inv(m[r, col], p)
        for j in range(nc):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(nr):
            if i == r:
                continue
            f = m[i, col]
            if f == 0:
                continue
            for j in range(col, nc):
                m[i, j] = (m[i, j] - f * m[r, j]) % p
                if m[i, j] < 0:
                    m[i, j] += p
        pivots.append(col)
        r += 1
    return mat, pivots


cdef inline void _decode3(int64_t x, int64_t q, int64_t* out):
    cdef int k
    for k in range(9):
        out[k] = x % q
        x //= q


cdef inline int64_t _encode3(int64_t* m, int64_t q):
    cdef int k
    cdef int64_t x = 0
    for k in range(8, -1, -1):
        x = x * q + m[k]
    return x


cdef int64_t _gl3_mul(int64_t x, int64_t y, int64_t q):
    cdef int64_t a[9]
    cdef int64_t b[9]
    cdef int64_t c[9]
    cdef int i, j, k
    cdef int64_t s
    _decode3(x, q, a)
    _decode3(y, q, b)
    for i in range(3):
        for j in range(3):
            s = 0
            for k in range(3):
                s += a[3 * i + k] * b[3 * k + j]
            c[3 * i + j] = s % q
    return _encode3(c, q)


def gl3_mul(int64_t x, int64_t y, int64_t q):
    """Product of two 3x3 matrices over a prime field, each encoded in base q."""
    return _gl3_mul(x, y, q)


def gl3_closure(gens, int64_t q):
    """Sorted elements of the subgroup generated by ``gens`` (prime q)."""
    cdef Py_ssize_t size = 1
    cdef int k
    for k in range(9):
        size *= q
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(size, dtype=np.uint8)
    cdef int64_t ident = 1 + q ** 4 + q ** 8
    cdef list frontier = [ident]
    cdef list found = [ident]
    cdef list gl = [int(g) for g in gens]
    cdef int64_t x, y, g
    seen[ident] = 1
    while frontier:
        x = frontier.pop()
        for g in gl:
            y = _gl3_mul(x, g, q)
            if not seen[y]:
                seen[y] = 1
                found.append(y)
                frontier.append(y)
    found.sort()
    return found
