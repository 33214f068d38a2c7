"""Exact linear algebra over Z, Q and F_p on plain Python lists."""
from fractions import Fraction


def hermite_form(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows, each with a positive pivot strictly to the
    right of the previous one, and every entry above a pivot reduced into
    ``[0, pivot)``.  The result depends only on the row space.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    m = len(A)
    r = 0
    for col in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[piv] = A[piv], A[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][col]:
                    f = A[i][col] // A[r][col]
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if A[r][col] == 0:
            continue
        if A[r][col] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            f = A[i][col] // A[r][col]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return [tuple(row) for row in A[:r]]


def pivots(hnf):
    return [next(j for j, a in enumerate(row) if a) for row in hnf]


def hnf_residue(v, hnf):
    """Reduce ``v`` against a Hermite basis; zero residue iff ``v`` is in the Z-span."""
    v = list(v)
    for row, j in zip(hnf, pivots(hnf)):
        if v[j]:
            f = v[j] // row[j]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
    return v


def hnf_coordinates(v, hnf):
    """Integer coefficients expressing ``v`` in the Hermite basis, or None."""
    v = list(v)
    coeffs = []
    for row, j in zip(hnf, pivots(hnf)):
        f, rem = divmod(v[j], row[j])
        if rem:
            return None
        coeffs.append(f)
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return coeffs if not any(v) else None


def rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    A = [[Fraction(a) for a in r] for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    piv = []
    r = 0
    for col in range(ncols):
        k = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = 1 / A[r][col]
        A[r] = [a * inv for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv.append(col)
        r += 1
        if r == len(A):
            break
    return A[:r], piv


def rank(rows):
    return len(rref(rows)[1])


def solve_left(B, v):
    """Solve ``x B = v`` over Q for a row vector ``x``; None if inconsistent."""
    m = len(B)
    n = len(v)
    # columns of B become equations
    aug = [[Fraction(B[i][j]) for i in range(m)] + [Fraction(v[j])] for j in range(n)]
    R, piv = rref(aug)
    if m in piv:
        return None
    x = [Fraction(0)] * m
    for row, j in zip(R, piv):
        x[j] = row[m]
    return x


def inverse(M):
    n = len(M)
    aug = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(M):
    A = [[Fraction(a) for a in r] for r in M]
    n = len(A)
    d = Fraction(1)
    for k in range(n):
        s = next((i for i in range(k, n) if A[i][k] != 0), None)
        if s is None:
            return 0
        if s != k:
            A[k], A[s] = A[s], A[k]
            d = -d
        d *= A[k][k]
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] / A[k][k]
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return d.numerator if d.denominator == 1 else d


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def rank_mod_p(rows, p):
    A = [[a % p for a in r] for r in rows]
    if not A:
        return 0
    ncols = len(A[0])
    r = 0
    for col in range(ncols):
        k = next((i for i in range(r, len(A)) if A[i][col]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = pow(A[r][col], -1, p)
        A[r] = [a * inv % p for a in A[r]]
        for i in range(r + 1, len(A)):
            f = A[i][col]
            if f:
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def vp(x, p):
    """p-adic valuation of a nonzero rational; None stands for +infinity."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def is_p_integral(x, p):
    return Fraction(x).denominator % p != 0
