"""Automorphisms of Lambda: torus, unipotent radical, swap, and a finite-field census."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import zlinalg
from .free_lie import LieInputError
from .lattice import R1, R2, build_lambda, free_algebra, relation_ideal


class SingularMapError(ValueError):
    pass


class AutMatrix:
    """Matrix acting on row vectors: row ``i`` is the image of basis element ``i``."""

    def __init__(self, algebra, rows):
        self.algebra = algebra
        self.rows = [[Fraction(x) for x in r] for r in rows]

    def __eq__(self, other):
        return isinstance(other, AutMatrix) and self.rows == other.rows

    def __matmul__(self, other):
        return AutMatrix(self.algebra, zlinalg.matmul(self.rows, other.rows))

    def apply(self, v):
        out = [Fraction(0)] * self.algebra.dim
        for i, c in v.coeffs.items():
            for k, x in enumerate(self.rows[i]):
                if x:
                    out[k] += c * x
        return self.algebra.element(out)

    def image(self, i):
        return self.algebra.element(self.rows[i])

    def inverse(self):
        return AutMatrix(self.algebra, zlinalg.inverse(self.rows))

    def linear_part(self):
        g = len(self.algebra.generator_names)
        return [row[:g] for row in self.rows[:g]]

    def is_diagonal(self):
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def diagonal(self):
        return [self.rows[i][i] for i in range(len(self.rows))]

    def is_bracket_preserving(self):
        A = self.algebra
        imgs = [self.image(i) for i in range(A.dim)]
        for i, j in itertools.combinations(range(A.dim), 2):
            lhs = A.bracket(imgs[i], imgs[j])
            rhs = self.apply(A.bracket(A.basis_element(i), A.basis_element(j)))
            if lhs != rhs:
                return False
        return True

    def is_p_integral(self, p):
        return all(zlinalg.is_p_integral(x, p) for r in self.rows for x in r)

    def to_json(self):
        return [[f"{x.numerator}/{x.denominator}" for x in r] for r in self.rows]


def _relation_trees(L):
    from .free_lie import parse_expression
    gens = {g.upper(): i for i, g in enumerate(L.generator_names)}

    def idx(t):
        return (idx(t[0]), idx(t[1])) if isinstance(t, tuple) else gens[t]

    out = []
    for rel in (R1, R2):
        out.append([(c, idx(t)) for c, t in parse_expression(rel)])
    return out


def relations_hold(L, images):
    """R1 and R2 vanish on the images, i.e. the map F -> L factors through Lambda."""
    for rel in _relation_trees(L):
        val = L.zero()
        for c, t in rel:
            val = val + c * L.evaluate(t, images)
        if val:
            return False
    return True


def extend_endomorphism(images, algebra=None, require_invertible=False):
    """Unique bracket-compatible linear map with the given generator images.

    ``algebra`` defaults to Lambda; the free ring F(3, 4) is also accepted.
    On Lambda the images must satisfy the defining relations.
    """
    A = algebra if algebra is not None else build_lambda()
    images = [A.parse(im) if isinstance(im, str) else im for im in images]
    if len(images) != len(A.generator_names):
        raise LieInputError("one image per generator required")
    if hasattr(A, "ideal") and not relations_hold(A, images):
        raise LieInputError("images do not satisfy the defining relations of Lambda")
    rows = [A.evaluate(A.basis_tree(i), images).dense() for i in range(A.dim)]
    g = AutMatrix(A, rows)
    if require_invertible and zlinalg.det(g.linear_part()) == 0:
        raise SingularMapError("images do not span modulo the derived subalgebra")
    return g


def descends_to_quotient(g, ideal=None):
    """The endomorphism ``g`` of F maps the ideal (over Q) into itself."""
    I = ideal if ideal is not None else relation_ideal()
    return all(I.contains_rational(g.apply(v)) for v in I.elements())


# -- torus and swap -----------------------------------------------------------

def torus_images(a, b, c, algebra=None):
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a ** 3 != b * c:
        raise LieInputError("torus elements need a^3 = b c")
    A = algebra if algebra is not None else build_lambda()
    x, y, z = A.generators()
    return [a * x, b * y, c * z]


def torus_matrix(a, b, c):
    return extend_endomorphism(torus_images(a, b, c))


def torus_diagonal(a, b, c, L=None):
    """Monomials ``a^i b^j c^k`` from the multidegrees of the basis."""
    L = L if L is not None else build_lambda()
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return [a ** i * b ** j * c ** k for i, j, k in L.multidegrees]


def swap_images(algebra=None):
    A = algebra if algebra is not None else build_lambda()
    x, y, z = A.generators()
    return [x, z, y]


# -- unipotent radical --------------------------------------------------------

# 0-based columns of Lambda: weight 2 is 3..5, weights 3-4 are 6..24.
HIGHER_COLUMNS = tuple(range(6, 25))


@dataclass
class UnipotentParams:
    """Entries of the first three rows of a unipotent automorphism.

    ``delta`` maps ``(row, column)`` with row in 1..3 and column in 7..25
    (1-based, matching the 25 basis positions) to a rational.
    """

    alpha: tuple = (0, 0, 0)
    upsilon: Fraction = Fraction(0)
    sigma: Fraction = Fraction(0)
    tau: Fraction = Fraction(0)
    delta: dict = field(default_factory=dict)

    def rows(self):
        r = [[Fraction(0)] * 25 for _ in range(3)]
        for i in range(3):
            r[i][i] = Fraction(1)
        r[0][3:6] = [Fraction(v) for v in self.alpha]
        r[1][3], r[1][5] = Fraction(self.upsilon), Fraction(self.sigma)
        r[2][4], r[2][5] = Fraction(self.upsilon), Fraction(self.tau)
        for (i, j), v in self.delta.items():
            if i not in (1, 2, 3) or not 7 <= j <= 25:
                raise LieInputError(f"delta index {(i, j)} out of range")
            r[i - 1][j - 1] = Fraction(v)
        return r

    @classmethod
    def from_rows(cls, rows):
        r = [[Fraction(x) for x in row] for row in rows[:3]]
        if r[1][4] != 0 or r[2][3] != 0 or r[1][3] != r[2][4]:
            raise LieInputError("rows do not have the unipotent pattern")
        if [r[i][:3] for i in range(3)] != [[1, 0, 0], [0, 1, 0], [0, 0, 1]]:
            raise LieInputError("linear part is not the identity")
        delta = {(i + 1, j + 1): r[i][j] for i in range(3) for j in HIGHER_COLUMNS if r[i][j]}
        return cls(tuple(r[0][3:6]), r[1][3], r[1][5], r[2][5], delta)

    @classmethod
    def random(cls, rng, denominators=(1,), bound=5, higher=True):
        def q():
            return Fraction(rng.randint(-bound, bound), rng.choice(denominators))
        delta = {(i, j): q() for i in (1, 2, 3) for j in range(7, 26)} if higher else {}
        return cls((q(), q(), q()), q(), q(), q(), delta)


# Which first-three-row positions each free parameter occupies (0-based row, col).
PARAMETER_LAYOUT = (
    [("alpha1", [(0, 3)]), ("alpha2", [(0, 4)]), ("alpha3", [(0, 5)]),
     ("upsilon", [(1, 3), (2, 4)]), ("sigma", [(1, 5)]), ("tau", [(2, 5)])]
    + [(f"delta{i + 1},{j + 1}", [(i, j)]) for i in range(3) for j in HIGHER_COLUMNS]
)


def unipotent_matrix(params):
    L = build_lambda()
    images = [L.element(r) for r in params.rows()]
    g = extend_endomorphism(images, L)
    if g.rows[:3] != params.rows():
        raise AssertionError("first three rows do not reproduce the parameters")
    for i in range(L.dim):
        if g.rows[i][i] != 1 or any(g.rows[i][j] for j in range(L.dim) if L.weights[j] <= L.weights[i] and j != i):
            raise AssertionError("unipotent matrix is not block unitriangular")
    return g


def is_integral_by_generators(g, p):
    """Rows of x, y, z are p-integral; this forces the whole matrix to be."""
    gen = all(zlinalg.is_p_integral(x, p) for r in g.rows[:3] for x in r)
    full = g.is_p_integral(p)
    if gen != full:
        raise AssertionError("generator rows integral but matrix not (or vice versa)")
    return gen


def free_lift_images(params, rng=None, algebra=None):
    """Images in F(3, 4) of an element of the unipotent group acting on F.

    ``X -> X + U``, ``Y -> Y + ups XY + sig YZ + V``, ``Z -> Z + ups XZ + tau YZ + W``
    with U in gamma_2 and V, W in gamma_3 drawn at random when ``rng`` is given.
    """
    F = algebra if algebra is not None else free_algebra()
    ups, sig, tau = (Fraction(v) for v in params)
    X, Y, Z = F.generators()

    def rand(minw):
        if rng is None:
            return F.zero()
        return F.element({i: rng.randint(-3, 3) for i in range(F.dim) if F.weights[i] >= minw})

    return [X + rand(2),
            Y + ups * F.parse("XY") + sig * F.parse("YZ") + rand(3),
            Z + ups * F.parse("XZ") + tau * F.parse("YZ") + rand(3)]


def relation_images(params, rng=None):
    """(R1 g, R2 g) in F, together with the values predicted by hand."""
    F = free_algebra()
    g = extend_endomorphism(free_lift_images(params, rng, F), F)
    ups, sig, tau = (Fraction(v) for v in params)
    r1, r2 = F.parse(R1), F.parse(R2)
    got = (g.apply(r1), g.apply(r2))
    expected = (r1 + ups * F.parse("YZYX") + sig * F.parse("ZYZY") + tau * F.parse("YZYY"),
                r2 + ups * F.parse("ZYZX") - tau * F.parse("YZYZ") - sig * F.parse("ZYZZ"))
    return got, expected, g


# -- the four determinant constraints -----------------------------------------

@dataclass
class CoefficientReport:
    A: list
    direct: dict
    formula: dict

    @property
    def ok(self):
        return self.direct == self.formula


def _det2(a, b, c, d):
    return a * d - b * c


def coefficient_constraints_check(A):
    """Weight-3 coefficients of ``(zyz) alpha`` against the 2x2 determinant formulas.

    ``A`` is the linear part (row i = image of generator i).  Only the
    linear part contributes modulo gamma_4.
    """
    L = build_lambda()
    A = [[Fraction(x) for x in r] for r in A]
    if zlinalg.det(A) == 0:
        raise SingularMapError("linear part must be invertible")
    gens = L.generators()
    imgs = [sum((A[i][k] * gens[k] for k in range(3)), L.zero()) for i in range(3)]
    x, y, z = imgs
    w = L.bracket(L.bracket(z, y), z)
    idx = {n: i for i, n in enumerate(L.names)}
    direct = {n: w[idx[n]] for n in ("xyy", "xzz", "xyx", "xzx", "xyz", "xzy")}
    (_, _, _), (a21, a22, a23), (a31, a32, a33) = A
    d1 = _det2(a21, a22, a31, a32)
    d2 = _det2(a21, a23, a31, a33)
    formula = {"xyy": -a32 * d1, "xzz": -a33 * d2, "xyx": -a31 * d1, "xzx": -a31 * d2}
    return CoefficientReport(A, {k: direct[k] for k in formula}, formula)


def random_invertible(rng, bound=3, size=3):
    while True:
        A = [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        if zlinalg.det(A) != 0:
            return A


# -- finite-field census of realisable linear parts ---------------------------

def _is_prime(q):
    return q > 1 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def _prime_power_base(q):
    for p in range(2, q + 1):
        if q % p == 0:
            return p
    return q


def kernel_tensors(q):
    """Integer tensors of F(3, 4) by weight block, reduced mod q, plus the projection.

    Hall ordinals: weight 1 is 0..2, weight 2 is 3..5, weight 3 is 6..13,
    weight 4 is 14..31.  The projection keeps Lambda columns 6..24.
    """
    F = free_algebra()
    L = build_lambda()
    blocks = {1: range(0, 3), 2: range(3, 6), 3: range(6, 14), 4: range(14, 32)}

    def tensor(wa, wb, wc):
        ra, rb, rc = blocks[wa], blocks[wb], blocks[wc]
        T = np.zeros((len(ra), len(rb), len(rc)), dtype=np.int64)
        for ia, i in enumerate(ra):
            for ib, j in enumerate(rb):
                for k, v in F.structure(i, j).items():
                    T[ia, ib, k - rc[0]] = v
        return T % q

    P = np.array(L.projection, dtype=np.int64)
    P3 = P[6:14, 6:25] % q
    P4 = P[14:32, 6:25] % q
    if np.any(P[6:32, :6]):
        raise AssertionError("higher-weight elements of F must project into weights >= 3")
    return dict(T11=tensor(1, 1, 2), T21=tensor(2, 1, 3), T31=tensor(3, 1, 4),
                T22=tensor(2, 2, 4), P3=P3, P4=P4)


def _scan_chunk(args):
    from . import kernels
    q, lo, hi, backend = args
    T = kernel_tensors(q)
    return kernels.scan_gl3(q, T, lo, hi, backend=backend)


@dataclass
class ClassificationReport:
    q: int
    realizable: set
    predicted: set
    gl_order: int
    weight3_survivors: int
    backend: str

    @property
    def ok(self):
        return self.realizable == self.predicted

    def to_json(self):
        return {"q": self.q, "gl_order": self.gl_order, "weight3_survivors": self.weight3_survivors,
                "realizable": len(self.realizable), "predicted": len(self.predicted),
                "match": self.ok, "backend": self.backend,
                "realizable_matrices": sorted(self.realizable)}


def predicted_linear_parts(q):
    """Diagonal ``(a, b, c)`` with ``a^3 = bc`` mod q, alone or followed by the y<->z swap."""
    out = set()
    for a in range(1, q):
        for b in range(1, q):
            c = a ** 3 * pow(b, -1, q) % q
            out.add((a, 0, 0, 0, b, 0, 0, 0, c))
            out.add((a, 0, 0, 0, 0, b, 0, c, 0))
    return out


def finite_field_classification(q=5, workers=1, backend=None):
    """Linear parts in GL_3(F_q) that lift to automorphisms of Lambda over F_q.

    For each invertible ``A`` the lift's weight-2 corrections enter the
    relation images linearly, so realisability is an affine solvability test
    over F_q (see :mod:`liezeta.kernels`).
    """
    p = _prime_power_base(q)
    if p <= 3:
        raise ValueError("characteristic must exceed 3")
    if not _is_prime(q):
        raise NotImplementedError("only prime fields are enumerated")
    from . import kernels
    backend = backend or kernels.BACKEND
    chunks = [(q, a, a + 1, backend) for a in range(q)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_scan_chunk, chunks))
    else:
        results = [_scan_chunk(c) for c in chunks]
    realizable = set()
    survivors = 0
    for mats, n3 in results:
        survivors += n3
        realizable.update(tuple(int(x) for x in m) for m in mats)
    order = 1
    for k in range(3):
        order *= q ** 3 - q ** k
    return ClassificationReport(q, realizable, predicted_linear_parts(q), order, survivors, backend)
