"""Truncated Hausdorff series and the group law it induces on m * Lambda."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import zlinalg
from .free_lie import FreeNilpotentAlgebra

DEFAULT_SEED = 20161104


# -- free associative algebra on two letters, truncated at degree c ----------

def _amul(u, v, c):
    out = {}
    for w1, a in u.items():
        for w2, b in v.items():
            if len(w1) + len(w2) <= c:
                w = w1 + w2
                out[w] = out.get(w, 0) + a * b
    return {w: x for w, x in out.items() if x}


def _aadd(u, v, s=1):
    out = dict(u)
    for w, b in v.items():
        out[w] = out.get(w, 0) + s * b
    return {w: x for w, x in out.items() if x}


def _aexp(u, c):
    out = {(): Fraction(1)}
    power = {(): Fraction(1)}
    for n in range(1, c + 1):
        power = _amul(power, u, c)
        out = _aadd(out, {w: x / math.factorial(n) for w, x in power.items()})
    return out


def _alog(e, c):
    """log(e) for e with constant term 1."""
    u = _aadd(e, {(): Fraction(1)}, -1)
    out = {}
    power = {(): Fraction(1)}
    for n in range(1, c + 1):
        power = _amul(power, u, c)
        out = _aadd(out, {w: Fraction((-1) ** (n + 1), n) * x for w, x in power.items()})
    return out


def _associative_image(tree, c):
    if isinstance(tree, tuple):
        a = _associative_image(tree[0], c)
        b = _associative_image(tree[1], c)
        return _aadd(_amul(a, b, c), _amul(b, a, c), -1)
    return {(tree,): Fraction(1)}


def hausdorff_associative(c):
    """log(exp X exp Y) in the free associative algebra, words of length <= c."""
    X = {(0,): Fraction(1)}
    Y = {(1,): Fraction(1)}
    return _alog(_amul(_aexp(X, c), _aexp(Y, c), c), c)


@dataclass(frozen=True)
class TruncatedBCH:
    """Hausdorff series up to degree ``c`` in the Hall basis of F(2, c)."""

    c: int
    algebra: FreeNilpotentAlgebra
    terms: tuple          # ((BasicCommutator, Fraction), ...)

    @property
    def denominator(self):
        return math.lcm(*(q.denominator for _, q in self.terms))

    def as_element(self):
        return self.algebra.element({b.ordinal: q for b, q in self.terms})

    def evaluate(self, algebra, u, v):
        """Substitute ``X -> u`` and ``Y -> v`` in a Lie algebra."""
        memo = {}

        def value(b):
            if b.ordinal not in memo:
                if b.is_leaf:
                    memo[b.ordinal] = (u, v)[b.generator.index]
                else:
                    memo[b.ordinal] = algebra.bracket(value(b.left), value(b.right))
            return memo[b.ordinal]

        out = algebra.zero()
        for b, q in self.terms:
            out = out + q * value(b)
        return out

    def to_json(self):
        return {"c": self.c, "m": self.denominator,
                "terms": [[b.name, f"{q.numerator}/{q.denominator}"] for b, q in self.terms]}


@lru_cache(maxsize=None)
def bch_truncated(c):
    """Degree-``c`` truncation of the Hausdorff series, derived from scratch.

    The series is computed in the truncated free associative algebra and
    then written in the Lie Hall basis by solving the linear system that
    expands Hall elements into associative words.
    """
    if c < 1:
        raise ValueError("class must be >= 1")
    F = FreeNilpotentAlgebra(2, c)
    phi = hausdorff_associative(c)
    images = [_associative_image(b.tree(), c) for b in F.basis]
    words = sorted({w for img in images for w in img} | set(phi), key=lambda w: (len(w), w))
    B = [[img.get(w, 0) for w in words] for img in images]
    target = [phi.get(w, 0) for w in words]
    coeffs = zlinalg.solve_left(B, target)
    if coeffs is None:
        raise ArithmeticError("Hausdorff series is not a Lie polynomial (construction bug)")
    terms = tuple((b, q) for b, q in zip(F.basis, coeffs) if q)
    return TruncatedBCH(c, F, terms)


def m_of(c):
    return bch_truncated(c).denominator


# -- the group exp(m Lambda) --------------------------------------------------

class MalcevGroup:
    """``(m L, *)`` with ``u * v = Phi_c(u, v)`` for a nilpotent lattice ``L``.

    Elements are Lie elements of ``L`` in its own coordinates; products are
    checked to stay inside ``m L``.
    """

    def __init__(self, lattice, c=4):
        self.lattice = lattice
        self.bch = bch_truncated(c)
        self.m = self.bch.denominator

    def in_group(self, u):
        return all(x.denominator == 1 and x.numerator % self.m == 0 for x in u.coeffs.values())

    def mul(self, u, v, check=True):
        w = self.bch.evaluate(self.lattice, u, v)
        if check and self.in_group(u) and self.in_group(v) and not self.in_group(w):
            raise AssertionError(f"product left m*Lambda: {w!r}")
        return w

    def inv(self, u):
        return -u

    def commutator(self, u, v, check=True):
        """Group commutator ``u^-1 v^-1 u v``."""
        return self.mul(self.mul(-u, -v, check), self.mul(u, v, check), check)

    def iterated_commutator(self, xs, check=True):
        out = xs[0]
        for x in xs[1:]:
            out = self.commutator(out, x, check)
        return out

    def random_element(self, rng, bound=10):
        """Uniform coordinates in ``m * [-bound, bound]``."""
        return self.lattice.element([self.m * rng.randint(-bound, bound) for _ in range(self.lattice.dim)])


def lie_iterated(L, xs):
    out = xs[0]
    for x in xs[1:]:
        out = L.bracket(out, x)
    return out


@dataclass
class CommutatorReport:
    group: object
    lie: object

    @property
    def agree(self):
        return self.group == self.lie


def group_commutator_vs_lie(G, xs):
    return CommutatorReport(G.iterated_commutator(list(xs)), lie_iterated(G.lattice, list(xs)))


def _min_valuation(v, p):
    vals = [zlinalg.vp(x, p) for x in v.coeffs.values()]
    return min(vals) if vals else None


@dataclass
class CongruenceReport:
    p: int
    k: int
    sum_valuations: list      # per-coordinate ord_p, None for zero
    commutator_valuations: list

    @staticmethod
    def _ok(vals, bound):
        return all(v is None or v >= bound for v in vals)

    @property
    def ok(self):
        return self._ok(self.sum_valuations, 2 * self.k) and self._ok(self.commutator_valuations, 3 * self.k)

    def to_json(self):
        return {"p": self.p, "k": self.k, "ok": self.ok,
                "sum_min_valuation": min((v for v in self.sum_valuations if v is not None), default=None),
                "commutator_min_valuation": min((v for v in self.commutator_valuations if v is not None),
                                                default=None)}


def limit_congruence(G, u, v, k, p):
    """Finite-level shadows of recovering ``+`` and ``[,]`` from the group law.

    Checks ``ord_p(Phi(p^k u, p^k v) - p^k (u + v)) >= 2k`` and
    ``ord_p([p^k u, p^k v]_grp - p^{2k} [u, v]) >= 3k`` coordinatewise.
    """
    if p <= 3:
        raise ValueError("p must exceed 3: the class-4 series has denominators 2 and 3")
    if k < 1:
        raise ValueError("k must be >= 1")
    pk = p ** k
    a, b = pk * u, pk * v
    d1 = G.mul(a, b, check=False) - pk * (u + v)
    d2 = G.commutator(a, b, check=False) - (pk * pk) * G.lattice.bracket(u, v)
    return CongruenceReport(p, k,
                            [zlinalg.vp(x, p) for x in d1.dense()],
                            [zlinalg.vp(x, p) for x in d2.dense()])


def coset_check(G, x, w, k, p):
    """The Lie coset ``x + p^k L`` meets the group coset ``x * p^k L`` at ``x + p^k w``.

    Solves ``x * z = x + p^k w`` as ``z = (-x) * (x + p^k w)`` and returns
    True iff ``z`` lies in ``p^k L`` (all coordinates with ord_p >= k).
    """
    target = x + (p ** k) * w
    z = G.mul(-x, target, check=False)
    if G.mul(x, z, check=False) != target:
        return False
    return all(zlinalg.vp(c, p) >= k for c in z.coeffs.values())


@dataclass
class GroupLawReport:
    seed: int
    samples: int
    failures: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not any(self.failures.values())


def group_law_suite(G, samples=200, seed=DEFAULT_SEED, bound=10):
    """Associativity, identity, inverses, closure and the abelian restriction."""
    rng = random.Random(seed)
    L = G.lattice
    rep = GroupLawReport(seed, samples, {"associativity": 0, "identity": 0, "inverse": 0,
                                         "closure": 0, "abelian": 0})
    top = [i for i in range(L.dim) if L.weights[i] == 4]
    for _ in range(samples):
        a, b, c = (G.random_element(rng, bound) for _ in range(3))
        ab = G.mul(a, b)
        if not G.in_group(ab):
            rep.failures["closure"] += 1
        if G.mul(ab, c) != G.mul(a, G.mul(b, c)):
            rep.failures["associativity"] += 1
        if G.mul(a, L.zero()) != a or G.mul(L.zero(), a) != a:
            rep.failures["identity"] += 1
        if G.mul(a, -a) or G.mul(-a, a):
            rep.failures["inverse"] += 1
        u = L.element({i: G.m * rng.randint(-bound, bound) for i in top})
        v = L.element({i: G.m * rng.randint(-bound, bound) for i in top})
        if G.mul(u, v) != u + v:
            rep.failures["abelian"] += 1
    return rep
