"""Free nilpotent Lie rings with a Hall basis.

Notation follows the usual product convention for brackets: a word such as
``PQRS`` is the left-normed commutator ``[[[P, Q], R], S]`` and juxtaposed
parenthesised groups bracket left to right, so ``(ZX)(YX)`` is
``[[Z, X], [Y, X]]``.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

from . import zlinalg

GENERATOR_LETTERS = "XYZWVUTSRQPONMLKJIHGFEDCBA"

# Left-normed Z-basis of F(3, 4) used for the coordinates of the quotient.
F_BASIS_34 = (
    "X", "Y", "Z", "XY", "XZ", "YZ",
    "XYY", "XZZ", "XYZ", "XZY", "XYX", "XZX", "YZY", "ZYZ",
    "XYYY", "XZZZ", "XYXX", "XZXX", "XYXY", "XZXZ",
    "XYXZ", "XZXY", "XYZX", "XYZZ", "XZYY", "XYZY",
    "XZYZ", "XYYZ", "XZZY", "YZYY", "YZYZ", "ZYZZ",
)


class LieInputError(ValueError):
    """Malformed expression, unknown generator or mismatched algebras."""


@dataclass(frozen=True)
class Generator:
    index: int
    name: str


@dataclass(frozen=True)
class BasicCommutator:
    ordinal: int
    weight: int
    multidegree: tuple
    generator: Optional[Generator] = None
    left: Optional["BasicCommutator"] = field(default=None, repr=False)
    right: Optional["BasicCommutator"] = field(default=None, repr=False)

    @property
    def is_leaf(self):
        return self.generator is not None

    @property
    def name(self):
        if self.is_leaf:
            return self.generator.name
        if self.right.is_leaf:
            return self.left.name + self.right.name
        return f"({self.left.name})({self.right.name})"

    def tree(self):
        """Bracket tree over generator indices: an int or a pair of trees."""
        if self.is_leaf:
            return self.generator.index
        return (self.left.tree(), self.right.tree())

    def __str__(self):
        return self.name


def hall_basis(n, c):
    """Basic commutators of weight <= c on n generators, in Hall order.

    Weight-1 elements are ordered by generator index; every element is
    smaller than all elements of larger weight; within a weight, products
    ``C1 C2`` are ordered by ``C1`` first and ``C2`` second.
    """
    if n < 1 or c < 1:
        raise LieInputError("need n >= 1 and c >= 1")
    if n > len(GENERATOR_LETTERS):
        raise LieInputError(f"at most {len(GENERATOR_LETTERS)} generators")
    basis = []
    for i in range(n):
        md = tuple(int(j == i) for j in range(n))
        basis.append(BasicCommutator(i, 1, md, generator=Generator(i, GENERATOR_LETTERS[i])))
    for w in range(2, c + 1):
        cands = []
        for c1 in basis:
            for c2 in basis:
                if c1.weight + c2.weight != w or c1.ordinal <= c2.ordinal:
                    continue
                if not c1.is_leaf and c1.right.ordinal > c2.ordinal:
                    continue
                cands.append((c1.ordinal, c2.ordinal, c1, c2))
        cands.sort(key=lambda t: (t[0], t[1]))
        for _, _, c1, c2 in cands:
            md = tuple(a + b for a, b in zip(c1.multidegree, c2.multidegree))
            basis.append(BasicCommutator(len(basis), w, md, left=c1, right=c2))
    return basis


# ---------------------------------------------------------------------------
# expression parsing

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z])|(.))")


def _tokenize(text):
    out = []
    for num, letter, other in _TOKEN.findall(text):
        if num:
            out.append(("num", Fraction(num)))
        elif letter:
            out.append(("gen", letter))
        elif other.strip():
            out.append(("op", other))
    return out


class _Parser:
    """Linear combinations of bracket words, e.g. ``2YZZY + ZYYZ - (ZX)(YX)``."""

    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise LieInputError(f"expected {op!r}")

    def parse(self):
        terms = []
        sign = 1
        first = True
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
            elif not first:
                break
            coeff = Fraction(sign)
            kind, val = self.peek()
            if kind == "num":
                self.take()
                coeff *= val
                if self.peek() == ("op", "*"):
                    self.take()
            kind, val = self.peek()
            if kind == "gen" or (kind == "op" and val in "(["):
                tree = self.product()
            else:
                raise LieInputError(f"unexpected token {val!r}")
            terms.append((coeff, tree))
            first = False
            sign = 1
        if self.pos != len(self.toks):
            raise LieInputError(f"trailing input at token {self.pos}")
        return terms

    def product(self):
        tree = self.atom()
        while True:
            kind, val = self.peek()
            if kind == "gen" or (kind == "op" and val in "(["):
                tree = (tree, self.atom())
            else:
                return tree

    def atom(self):
        kind, val = self.take()
        if kind == "gen":
            return val
        if kind == "op" and val == "(":
            t = self.product()
            self.expect(")")
            return t
        if kind == "op" and val == "[":
            a = self.product()
            self.expect(",")
            b = self.product()
            self.expect("]")
            return (a, b)
        raise LieInputError(f"unexpected token {val!r}")


def parse_expression(text):
    """Parse into a list of ``(coefficient, tree)``; trees use generator letters."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# algebras and elements

class LieAlgebra:
    """A Lie ring given by an ordered basis and an integer/rational structure table.

    Subclasses fill in ``names``, ``weights``, ``multidegrees``,
    ``generator_names`` and the structure table ``_table``, a dict mapping
    ``(i, j)`` with ``i != j`` to a sparse dict ``{k: coefficient}``.
    """

    names: list
    weights: list
    multidegrees: list
    generator_names: str
    _table: dict

    @property
    def dim(self):
        return len(self.names)

    @cached_property
    def _index(self):
        return {name: i for i, name in enumerate(self.names)}

    def zero(self):
        return LieElement(self, {})

    def basis_element(self, i):
        return LieElement(self, {i: Fraction(1)})

    def generators(self):
        return [self.basis_element(i) for i in range(len(self.generator_names))]

    def element(self, coeffs):
        """Element from a dict ``{ordinal: c}`` or a dense coefficient sequence."""
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        return LieElement(self, {int(k): Fraction(v) for k, v in items if v != 0})

    def structure(self, i, j):
        return self._table.get((i, j), {})

    def bracket(self, a, b):
        if a.algebra is not self or b.algebra is not self:
            raise LieInputError("elements belong to different algebras")
        out = {}
        for i, ca in a.coeffs.items():
            for j, cb in b.coeffs.items():
                t = self._table.get((i, j))
                if not t:
                    continue
                cab = ca * cb
                for k, ck in t.items():
                    out[k] = out.get(k, 0) + cab * ck
        return LieElement(self, {k: v for k, v in out.items() if v != 0})

    def evaluate(self, tree, images):
        """Evaluate a bracket tree whose leaves index into ``images``."""
        if isinstance(tree, tuple):
            return self.bracket(self.evaluate(tree[0], images), self.evaluate(tree[1], images))
        return images[tree]

    def parse(self, text):
        """Value of a bracket expression such as ``"2YZZY + ZYYZ"`` in this algebra."""
        gens = {g: i for i, g in enumerate(self.generator_names)}

        def to_index(tree):
            if isinstance(tree, tuple):
                return (to_index(tree[0]), to_index(tree[1]))
            if tree not in gens:
                raise LieInputError(f"unknown generator {tree!r}")
            return gens[tree]

        images = self.generators()
        total = self.zero()
        for coeff, tree in parse_expression(text):
            total = total + coeff * self.evaluate(to_index(tree), images)
        return total

    def weight_of(self, i):
        return self.weights[i]

    def basis_tree(self, i):
        """Bracket tree over generator indices representing basis element i."""
        raise NotImplementedError

    def is_antisymmetric(self):
        for i in range(self.dim):
            for j in range(self.dim):
                a = self.bracket(self.basis_element(i), self.basis_element(j))
                b = self.bracket(self.basis_element(j), self.basis_element(i))
                if a + b != self.zero():
                    return False
        return True

    def jacobi_failures(self):
        """Basis triples violating the Jacobi identity (expected none)."""
        e = [self.basis_element(i) for i in range(self.dim)]
        bad = []
        for i, j, k in itertools.combinations(range(self.dim), 3):
            s = (self.bracket(self.bracket(e[i], e[j]), e[k])
                 + self.bracket(self.bracket(e[j], e[k]), e[i])
                 + self.bracket(self.bracket(e[k], e[i]), e[j]))
            if s != self.zero():
                bad.append((i, j, k))
        return bad

    def to_json(self):
        def frac(x):
            x = Fraction(x)
            return f"{x.numerator}/{x.denominator}"

        return {
            "generators": list(self.generator_names),
            "basis": [
                {"ordinal": i, "name": self.names[i], "weight": self.weights[i],
                 "multidegree": list(self.multidegrees[i])}
                for i in range(self.dim)
            ],
            "tensor": [
                {"i": i, "j": j, "coeffs": [[k, frac(c)] for k, c in sorted(t.items())]}
                for (i, j), t in sorted(self._table.items()) if t
            ],
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=1)


class LieElement:
    """Sparse exact-rational vector over the basis of a :class:`LieAlgebra`."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        if other.algebra is not self.algebra:
            raise LieInputError("elements belong to different algebras")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LieElement(self.algebra, out)

    def __neg__(self):
        return LieElement(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, LieElement):
            return NotImplemented
        scalar = Fraction(scalar)
        if scalar == 0:
            return self.algebra.zero()
        return LieElement(self.algebra, {k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        return self.algebra.bracket(self, other)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs.get(i, Fraction(0))

    def dense(self):
        return [self.coeffs.get(i, Fraction(0)) for i in range(self.algebra.dim)]

    def is_integral(self):
        return all(v.denominator == 1 for v in self.coeffs.values())

    def weight_components(self):
        return {self.algebra.weights[k] for k in self.coeffs}

    def multidegrees(self):
        return {self.algebra.multidegrees[k] for k in self.coeffs}

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            name = self.algebra.names[k]
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            elif c < 0:
                parts.append(f"- {-c}*{name}")
            else:
                parts.append(f"+ {c}*{name}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


class FreeNilpotentAlgebra(LieAlgebra):
    """Free nilpotent Lie ring of class ``c`` on ``n`` generators, Hall basis."""

    def __init__(self, n, c):
        self.n = n
        self.c = c
        self.basis = hall_basis(n, c)
        self.names = [b.name for b in self.basis]
        self.weights = [b.weight for b in self.basis]
        self.multidegrees = [b.multidegree for b in self.basis]
        self.generator_names = GENERATOR_LETTERS[:n]
        self._pairs = {(b.left.ordinal, b.right.ordinal): b.ordinal
                       for b in self.basis if not b.is_leaf}
        self._memo = {}
        self._table = {}
        for i in range(self.dim):
            for j in range(self.dim):
                if i != j and self.weights[i] + self.weights[j] <= c:
                    t = self._basis_bracket(i, j)
                    if t:
                        self._table[(i, j)] = t
        del self._memo

    def basis_tree(self, i):
        return self.basis[i].tree()

    def _combine(self, u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self._basis_bracket(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: x for k, x in out.items() if x}

    def _basis_bracket(self, i, j):
        if i == j or self.weights[i] + self.weights[j] > self.c:
            return {}
        key = (i, j)
        if key in self._memo:
            return self._memo[key]
        if i < j:
            res = {k: -v for k, v in self._basis_bracket(j, i).items()}
        else:
            b = self.basis[i]
            if b.is_leaf or b.right.ordinal <= j:
                res = {self._pairs[(i, j)]: 1}
            else:
                # [[a, r], e] = [[a, e], r] + [a, [r, e]]   with r > e
                a, r = b.left.ordinal, b.right.ordinal
                t1 = self._combine(self._basis_bracket(a, j), {r: 1})
                t2 = self._combine({a: 1}, self._basis_bracket(r, j))
                res = dict(t1)
                for k, v in t2.items():
                    res[k] = res.get(k, 0) + v
                res = {k: v for k, v in res.items() if v}
        self._memo[key] = res
        return res

    def normal_form(self, expr):
        """Hall-basis expansion of a bracket expression (string) or tree."""
        if isinstance(expr, str):
            return self.parse(expr)
        return self.evaluate(expr, self.generators())

    def graded_dimensions(self):
        return tuple(self.weights.count(w) for w in range(1, self.c + 1))

    def is_graded(self):
        """Every bracket of basis elements has the summed multidegree."""
        for (i, j), t in self._table.items():
            md = tuple(a + b for a, b in zip(self.multidegrees[i], self.multidegrees[j]))
            if any(self.multidegrees[k] != md for k in t):
                return False
        return True

    def structure_constants_integral(self):
        return all(Fraction(v).denominator == 1 for t in self._table.values() for v in t.values())

    def change_of_basis(self, words):
        """Matrix whose rows are the Hall coordinates of ``words``, and its inverse.

        Raises ``LieInputError`` unless the words form a Z-basis.
        """
        M = [self.parse(w).dense() for w in words]
        if len(M) != self.dim:
            raise LieInputError(f"need {self.dim} words, got {len(M)}")
        d = zlinalg.det(M)
        if d not in (1, -1):
            raise LieInputError(f"words do not form a Z-basis (det {d})")
        return M, zlinalg.inverse(M)


@dataclass
class RewriteReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def verify_rewrite_identities(algebra=None):
    """Check the four-term identity for left-normed words and the base-change relations.

    ``PQRS = PSQR + SQPR + RSQP + SRPQ`` is checked for every substitution of
    generators, then the three relations expressing the non-left-normed Hall
    elements of weight 4 through left-normed words.
    """
    F = algebra if algebra is not None else FreeNilpotentAlgebra(3, 4)
    report = RewriteReport()
    g = F.generator_names
    for P, Q, R, S in itertools.product(g, repeat=4):
        lhs = F.parse(P + Q + R + S)
        rhs = F.parse(f"{P}{S}{Q}{R} + {S}{Q}{P}{R} + {R}{S}{Q}{P} + {S}{R}{P}{Q}")
        report.checked += 1
        if lhs != rhs:
            report.failures.append(("PQRS", P + Q + R + S))
    if F.n >= 3 and F.c >= 4:
        for lhs, rhs in BASE_CHANGE_RELATIONS:
            report.checked += 1
            if F.parse(lhs) != F.parse(rhs):
                report.failures.append(("base-change", lhs))
    return report


BASE_CHANGE_RELATIONS = (
    ("(ZX)(YX)", "YXXZ - YXZX"),
    ("(ZY)(YX)", "XYZY - XYYZ"),
    ("(ZY)(ZX)", "XZZY - XZYZ"),
)
