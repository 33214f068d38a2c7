"""Integer Lie ideals of a free nilpotent ring and the rank-25 quotient lattice."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import zlinalg
from .free_lie import FreeNilpotentAlgebra, LieAlgebra, LieElement, LieInputError

R1 = "YXXX - YZY"
R2 = "ZXXX - ZYZ"

# Complement of the ideal inside F(3, 4): the left-normed basis of the quotient.
LAMBDA_BASIS = (
    "x", "y", "z", "xy", "xz", "yz",
    "xyy", "xzz", "xyz", "xzy", "xyx", "xzx",
    "xyyy", "xzzz", "xyxx", "xzxx", "xyxy", "xzxz",
    "xyxz", "xzxy", "xyzx", "xyzz", "xzyy", "xyzy", "xzyz",
)


class LieIdeal:
    """Z-span of a bracket-closed set of integral elements, kept in Hermite form."""

    def __init__(self, ambient, generators, basis):
        self.ambient = ambient
        self.generators = list(generators)
        self.basis = basis

    @property
    def rank(self):
        return len(self.basis)

    def elements(self):
        return [self.ambient.element(row) for row in self.basis]

    def __contains__(self, v):
        return membership(self, v)

    def contains_rational(self, v):
        """Membership in the Q-span (the ideal after tensoring with Q)."""
        if not self.basis:
            return not v.coeffs
        return zlinalg.rank(list(self.basis) + [v.dense()]) == self.rank


def _as_int_row(v):
    if not v.is_integral():
        raise LieInputError(f"non-integral generator {v!r}")
    return [int(c) for c in v.dense()]


def ideal_closure(generators, ambient=None):
    """Smallest bracket-closed Z-submodule containing the integral ``generators``."""
    gens = list(generators)
    if ambient is None:
        if not gens:
            raise LieInputError("ambient algebra needed for an empty generating set")
        ambient = gens[0].algebra
    rows = [_as_int_row(g) for g in gens]
    H = zlinalg.hermite_form(rows)
    basis_elems = [ambient.basis_element(i) for i in range(ambient.dim)]
    frontier = [ambient.element(r) for r in H]
    while frontier:
        new_rows = []
        for v in frontier:
            for e in basis_elems:
                w = ambient.bracket(v, e)
                if w:
                    new_rows.append(_as_int_row(w))
        H_next = zlinalg.hermite_form(list(H) + new_rows)
        if H_next == H:
            break
        frontier = [ambient.element(r) for r in H_next if r not in H]
        H = H_next
    return LieIdeal(ambient, gens, tuple(H))


def membership(ideal, v):
    if v.algebra is not ideal.ambient:
        return False
    if not v.is_integral():
        return False
    return not any(zlinalg.hnf_residue(_as_int_row(v), ideal.basis))


class QuotientLattice(LieAlgebra):
    """``ambient / ideal`` with a prescribed complement basis of left-normed words.

    ``complement`` lists words over lower-case generator letters.  Together
    with the ideal basis they must form a Z-basis of the ambient lattice.
    """

    def __init__(self, ambient, ideal, complement):
        self.ambient = ambient
        self.ideal = ideal
        self.generator_names = ambient.generator_names.lower()
        self.names = list(complement)
        self.complement = [ambient.parse(w.upper()) for w in complement]
        self.weights = [len(w) for w in complement]
        self.multidegrees = [tuple(w.count(g) for g in self.generator_names) for w in complement]
        C = [v.dense() for v in self.complement]
        M = C + [list(r) for r in ideal.basis]
        if len(M) != ambient.dim:
            raise LieInputError(f"complement rank {len(C)} + ideal rank {ideal.rank} != {ambient.dim}")
        d = zlinalg.det(M)
        if d not in (1, -1):
            raise LieInputError(f"complement and ideal do not span the lattice (det {d})")
        Minv = zlinalg.inverse(M)
        r = len(C)
        # ambient coordinates -> quotient coordinates
        self.projection = [[int(x) for x in row[:r]] for row in Minv]
        self._table = {}
        for i in range(r):
            for j in range(r):
                if i != j:
                    t = self.project(ambient.bracket(self.complement[i], self.complement[j]))
                    if t:
                        self._table[(i, j)] = {k: int(v) for k, v in t.coeffs.items()}

    def basis_tree(self, i):
        gens = {g: k for k, g in enumerate(self.generator_names)}
        tree = gens[self.names[i][0]]
        for ch in self.names[i][1:]:
            tree = (tree, gens[ch])
        return tree

    def project(self, v):
        out = {}
        for i, c in v.coeffs.items():
            for k, p in enumerate(self.projection[i]):
                if p:
                    out[k] = out.get(k, 0) + c * p
        return self.element(out)

    def lift(self, v):
        out = self.ambient.zero()
        for k, c in v.coeffs.items():
            out = out + c * self.complement[k]
        return out

    def graded_ranks(self):
        return tuple(self.weights.count(w) for w in range(1, max(self.weights) + 1))

    def lower_central_series(self):
        """Ranks of gamma_1, gamma_2, ... computed by iterated bracketing."""
        e = [self.basis_element(i) for i in range(self.dim)]
        current = [v.dense() for v in e]
        ranks = [zlinalg.rank(current)]
        while ranks[-1]:
            span_rows, _ = zlinalg.rref(current)
            nxt = []
            for row in span_rows:
                v = self.element(row)
                for g in e:
                    w = self.bracket(v, g)
                    if w:
                        nxt.append(w.dense())
            current = nxt
            ranks.append(zlinalg.rank(current) if current else 0)
        return ranks

    def filtration_failures(self):
        """Basis pairs whose bracket has a term of weight below the sum of weights."""
        bad = []
        for (i, j), t in self._table.items():
            w = self.weights[i] + self.weights[j]
            if any(self.weights[k] < w for k in t):
                bad.append((i, j))
        return bad

    def torus_grading_failures(self):
        """Pairs breaking the grading by torus characters ``x^a y^b z^c`` with ``c = a^3/b``.

        A monomial of multidegree ``(d1, d2, d3)`` has character
        ``(d1 + 3 d3, d2 - d3)`` in the exponents of ``(a, b)``.
        """
        def char(md):
            return (md[0] + 3 * md[2], md[1] - md[2])

        bad = []
        for (i, j), t in self._table.items():
            target = tuple(a + b for a, b in zip(char(self.multidegrees[i]), char(self.multidegrees[j])))
            if any(char(self.multidegrees[k]) != target for k in t):
                bad.append((i, j))
        return bad

    def structure_constants_integral(self):
        return all(Fraction(v).denominator == 1 for t in self._table.values() for v in t.values())

    def projection_is_homomorphism(self):
        F = self.ambient
        for i in range(F.dim):
            for j in range(F.dim):
                a, b = F.basis_element(i), F.basis_element(j)
                if self.project(F.bracket(a, b)) != self.bracket(self.project(a), self.project(b)):
                    return False
        return True


@lru_cache(maxsize=None)
def free_algebra():
    return FreeNilpotentAlgebra(3, 4)


@lru_cache(maxsize=None)
def relation_ideal():
    F = free_algebra()
    return ideal_closure([F.parse(R1), F.parse(R2)], ambient=F)


@lru_cache(maxsize=None)
def build_lambda():
    """The class-4 lattice of rank 25: F(3, 4) modulo the ideal of R1 and R2."""
    return QuotientLattice(free_algebra(), relation_ideal(), LAMBDA_BASIS)


@dataclass
class SameWeightReport:
    checked: int = 0
    violations: list = field(default_factory=list)
    decompositions: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations


def same_weight_check(L=None):
    """Every length-4 left-normed word in x, y, z expands integrally over basis
    elements of its own multidegree."""
    L = L if L is not None else build_lambda()
    report = SameWeightReport()
    for letters in itertools.product(L.generator_names, repeat=4):
        w = "".join(letters)
        v = L.parse(w)
        md = tuple(w.count(g) for g in L.generator_names)
        report.checked += 1
        report.decompositions[w] = v
        if not v.is_integral() or any(m != md for m in v.multidegrees()):
            report.violations.append(w)
    return report
