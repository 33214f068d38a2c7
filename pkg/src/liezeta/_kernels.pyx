# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: GL_3(F_q) realisability scan and coset counting."""
import numpy as np

ctypedef long long i64


cdef inline i64 md(i64 a, i64 q) nogil:
    a %= q
    return a + q if a < 0 else a


cdef void bracket(const i64[:, :, ::1] T, i64* u, int nu, i64* v, int nv,
                  i64* out, int nout, i64 q) nogil:
    cdef int i, j, k
    cdef i64 c
    for k in range(nout):
        out[k] = 0
    for i in range(nu):
        if u[i] == 0:
            continue
        for j in range(nv):
            if v[j] == 0:
                continue
            c = u[i] * v[j]
            for k in range(nout):
                out[k] += c * T[i, j, k]
    for k in range(nout):
        out[k] = md(out[k], q)


cdef void project(const i64[:, ::1] P, i64* u, int nu, i64* out, i64 q) nogil:
    cdef int i, k
    for k in range(19):
        out[k] = 0
    for i in range(nu):
        if u[i]:
            for k in range(19):
                out[k] += u[i] * P[i, k]
    for k in range(19):
        out[k] = md(out[k], q)


cdef int consistent(i64[:, ::1] A, int R, int C, i64 q) nogil:
    """Gaussian elimination on the augmented ``R x (C+1)`` matrix."""
    cdef int r = 0, col, i, j, piv
    cdef i64 inv, f, t
    for col in range(C):
        piv = -1
        for i in range(r, R):
            if A[i, col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(C + 1):
                t = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = t
        inv = 1
        for j in range(q - 2):
            inv = inv * A[r, col] % q
        for j in range(C + 1):
            A[r, j] = A[r, j] * inv % q
        for i in range(R):
            if i != r and A[i, col]:
                f = A[i, col]
                for j in range(C + 1):
                    A[i, j] = md(A[i, j] - f * A[r, j], q)
        r += 1
    for i in range(r, R):
        if A[i, C]:
            return 0
    return 1


cdef int relation_rows(const i64[:, :, ::1] T11, const i64[:, :, ::1] T21,
                       const i64[:, :, ::1] T31, const i64[:, :, ::1] T22,
                       const i64[:, ::1] P3, const i64[:, ::1] P4,
                       i64* x, i64* a, i64* c, int swap, i64[:, ::1] A, int row0, i64 q) nogil:
    """Fill 13 rows of the system for the relation ``AXXX - ACA``; 0 if weight 3 fails."""
    cdef i64 ac[3]
    cdef i64 ax[3]
    cdef i64 w3[8]
    cdef i64 t3[8]
    cdef i64 w4[18]
    cdef i64 t4[18]
    cdef i64 s4[18]
    cdef i64 p3[19]
    cdef i64 p4[19]
    cdef i64 e[3]
    cdef int k, j, col
    bracket(T11, a, 3, c, 3, ac, 3, q)
    bracket(T21, ac, 3, a, 3, w3, 8, q)
    project(P3, w3, 8, p3, q)
    for k in range(6):
        if p3[k]:
            return 0
    bracket(T11, a, 3, x, 3, ax, 3, q)
    bracket(T21, ax, 3, x, 3, t3, 8, q)
    bracket(T31, t3, 8, x, 3, w4, 18, q)
    project(P4, w4, 18, p4, q)
    for k in range(13):
        A[row0 + k, 6] = md(p4[6 + k] - p3[6 + k], q)
    for j in range(3):
        e[0] = 0
        e[1] = 0
        e[2] = 0
        e[j] = 1
        # derivative in the correction of a: [[pa,c],a] + [[a,c],pa]
        bracket(T21, e, 3, c, 3, t3, 8, q)
        bracket(T31, t3, 8, a, 3, t4, 18, q)
        bracket(T22, ac, 3, e, 3, s4, 18, q)
        for k in range(18):
            t4[k] = md(t4[k] + s4[k], q)
        project(P4, t4, 18, p4, q)
        col = j + 3 if swap else j
        for k in range(13):
            A[row0 + k, col] = p4[6 + k]
        # derivative in the correction of c: [[a,pc],a]
        bracket(T21, e, 3, a, 3, t3, 8, q)
        bracket(T31, t3, 8, a, 3, t4, 18, q)
        for k in range(18):
            t4[k] = md(-t4[k], q)
        project(P4, t4, 18, p4, q)
        col = j if swap else j + 3
        for k in range(13):
            A[row0 + k, col] = p4[6 + k]
    return 1


def scan_gl3(int q, dict T, int lo, int hi):
    cdef const i64[:, :, ::1] T11 = np.ascontiguousarray(T["T11"], dtype=np.int64)
    cdef const i64[:, :, ::1] T21 = np.ascontiguousarray(T["T21"], dtype=np.int64)
    cdef const i64[:, :, ::1] T31 = np.ascontiguousarray(T["T31"], dtype=np.int64)
    cdef const i64[:, :, ::1] T22 = np.ascontiguousarray(T["T22"], dtype=np.int64)
    cdef const i64[:, ::1] P3 = np.ascontiguousarray(T["P3"], dtype=np.int64)
    cdef const i64[:, ::1] P4 = np.ascontiguousarray(T["P4"], dtype=np.int64)
    cdef i64[:, ::1] A = np.zeros((26, 7), dtype=np.int64)
    cdef i64 m[9]
    cdef i64 total = 1
    cdef i64 idx, rem, d
    cdef int k, a0, survivors = 0
    found = []
    for k in range(8):
        total *= q
    for a0 in range(lo, hi):
        m[0] = a0
        for idx in range(total):
            rem = idx
            for k in range(8, 0, -1):
                m[k] = rem % q
                rem //= q
            d = md(m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                   + m[2] * (m[3] * m[7] - m[4] * m[6]), q)
            if d == 0:
                continue
            if not relation_rows(T11, T21, T31, T22, P3, P4, &m[0], &m[3], &m[6], 0, A, 0, q):
                continue
            if not relation_rows(T11, T21, T31, T22, P3, P4, &m[0], &m[6], &m[3], 1, A, 13, q):
                continue
            survivors += 1
            if consistent(A, 26, 6, q):
                found.append(tuple(int(m[k]) for k in range(9)))
    return found, survivors


def count_cosets(i64 p, int K, vals):
    """Count ``m`` in ``[0, p^K)`` killed by every ``p^v`` modulo ``p^K``."""
    cdef i64 mod = 1
    cdef int k, n = len(vals)
    for k in range(K):
        mod *= p
    if n == 0:
        return mod
    if mod > (1 << 31):
        from ._kernels_py import count_cosets as slow
        return slow(p, K, vals)
    steps = np.array([pow(int(p), int(v), int(mod)) for v in vals], dtype=np.int64)
    cdef i64[::1] s = steps
    cdef i64[::1] r = np.zeros(n, dtype=np.int64)
    cdef i64 m, total = 0
    cdef int ok
    with nogil:
        for m in range(mod):
            ok = 1
            for k in range(n):
                if r[k]:
                    ok = 0
                r[k] += s[k]
                if r[k] >= mod:
                    r[k] -= mod
            total += ok
    return total
