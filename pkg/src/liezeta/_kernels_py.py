"""Pure numpy implementations of the hot loops (fallback for the compiled module)."""
import itertools

import numpy as np

CHUNK = 1 << 16


def _t11(T, u, v):
    return np.einsum("ni,nj,ijk->nk", u, v, T["T11"])


def _t21(T, u, v):
    return np.einsum("ni,nj,ijk->nk", u, v, T["T21"])


def _t31(T, u, v):
    return np.einsum("ni,nj,ijk->nk", u, v, T["T31"])


def _t22(T, u, v):
    return np.einsum("ni,nj,ijk->nk", u, v, T["T22"])


def relation_system(q, T, x, y, z):
    """Affine system ``M u = b`` (mod q) in the weight-2 corrections of y and z.

    Returns ``(lam3, M, b)`` where ``lam3`` holds the weight-3 Lambda
    coordinates of both relation images (must vanish), ``M`` has shape
    ``(n, 26, 6)`` and ``b`` shape ``(n, 26)``.
    """
    n = len(x)
    P3, P4 = T["P3"], T["P4"]
    eye = np.eye(3, dtype=np.int64)
    rows_b, rows_M, lam3 = [], [], []
    for a, c, s in ((y, z, 1), (z, y, -1)):
        # relation = A X X X - A C A with (A, C) = (Y, Z) or (Z, Y)
        ac = _t11(T, a, c) % q
        w3 = _t21(T, ac, a) % q
        axxx = _t31(T, _t21(T, _t11(T, a, x) % q, x) % q, x) % q
        proj3 = (w3 @ P3) % q
        lam3.append(proj3[:, :6])
        b = (axxx @ P4 - proj3) % q
        rows_b.append(b[:, 6:])
        # linear part of [[A',C'],A'] in the corrections pa, pc
        cols_a, cols_c = [], []
        for k in range(3):
            e = np.broadcast_to(eye[k], (n, 3))
            t_a = _t31(T, _t21(T, e, c) % q, a) + _t22(T, ac, e)    # [[pa,c],a] + [[a,c],pa]
            t_c = -_t31(T, _t21(T, e, a) % q, a)                   # [[a,pc],a]
            cols_a.append((t_a % q) @ P4 % q)
            cols_c.append((t_c % q) @ P4 % q)
        block = np.stack(cols_a + cols_c, axis=2)[:, 6:, :]         # (n, 13, 6)
        if s < 0:
            # unknowns are ordered (py, pz); for the second relation a = z
            block = np.concatenate([block[:, :, 3:], block[:, :, :3]], axis=2)
        rows_M.append(block)
    return (np.concatenate(lam3, axis=1), np.concatenate(rows_M, axis=1) % q,
            np.concatenate(rows_b, axis=1) % q)


def consistent_mod_q(M, b, q):
    """Batched solvability of ``M u = b`` over F_q by Gaussian elimination."""
    n, R, C = M.shape
    A = np.concatenate([M, b[:, :, None]], axis=2) % q
    used = np.zeros((n, R), dtype=bool)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = pow(a, -1, q)
    for col in range(C):
        cand = (A[:, :, col] != 0) & ~used
        has = cand.any(axis=1)
        idx = np.nonzero(has)[0]
        if not len(idx):
            continue
        piv = cand[idx].argmax(axis=1)
        prow = A[idx, piv] * inv[A[idx, piv, col]][:, None] % q
        f = A[idx, :, col]
        A[idx] = (A[idx] - f[:, :, None] * prow[:, None, :]) % q
        A[idx, piv] = prow
        used[idx, piv] = True
    return ~((~used) & (A[:, :, C] != 0)).any(axis=1)


def _det3(A, q):
    return (A[:, 0, 0] * (A[:, 1, 1] * A[:, 2, 2] - A[:, 1, 2] * A[:, 2, 1])
            - A[:, 0, 1] * (A[:, 1, 0] * A[:, 2, 2] - A[:, 1, 2] * A[:, 2, 0])
            + A[:, 0, 2] * (A[:, 1, 0] * A[:, 2, 1] - A[:, 1, 1] * A[:, 2, 0])) % q


def scan_gl3(q, T, lo, hi):
    """Realisable ``A`` in GL_3(F_q) with top-left entry in ``[lo, hi)``.

    Returns ``(matrices, survivors)``: row-major 9-tuples, and how many
    invertible matrices passed the weight-3 filter.
    """
    rest = np.array(list(itertools.product(range(q), repeat=8)), dtype=np.int64)
    found, survivors = [], 0
    for a00 in range(lo, hi):
        for start in range(0, len(rest), CHUNK):
            tail = rest[start:start + CHUNK]
            flat = np.concatenate([np.full((len(tail), 1), a00, dtype=np.int64), tail], axis=1)
            A = flat.reshape(-1, 3, 3)
            keep = _det3(A, q) != 0
            A, flat = A[keep], flat[keep]
            lam3, M, b = relation_system(q, T, A[:, 0], A[:, 1], A[:, 2])
            ok3 = ~lam3.any(axis=1)
            survivors += int(ok3.sum())
            if not ok3.any():
                continue
            ok = consistent_mod_q(M[ok3], b[ok3], q)
            found.extend(tuple(int(v) for v in row) for row in flat[ok3][ok])
    return found, survivors


def count_cosets(p, K, vals):
    """Number of ``m`` in ``[0, p^K)`` with ``m p^v = 0 (mod p^K)`` for every ``v``."""
    mod = p ** K
    steps = [p ** v % mod for v in vals]
    total = 0
    for start in range(0, mod, CHUNK):
        m = np.arange(start, min(mod, start + CHUNK), dtype=object if mod > 2 ** 31 else np.int64)
        ok = np.ones(len(m), dtype=bool)
        for s in steps:
            ok &= (m * s) % mod == 0
        total += int(ok.sum())
    return total
