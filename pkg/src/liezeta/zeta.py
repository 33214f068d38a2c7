"""Bivariate rational functions in (q, t), the valuation lattice sum, and the local zeta function."""
from __future__ import annotations

import math
from fractions import Fraction

from .padic_measure import ValuationTriple, det_valuation, theta

CONJECTURAL_NOTE = "conjectural for p <= 3"
SUBSTITUTION = (95, 34)     # X -> q^95 t^34


class BiPoly:
    """Sparse integer polynomial in ``q`` and a second variable (``X`` or ``t``)."""

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var="t"):
        out = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError("exponents must be nonnegative")
            if c:
                out[(a, b)] = out.get((a, b), 0) + int(c)
        self.terms = {k: c for k, c in out.items() if c}
        self.var = var

    @classmethod
    def const(cls, c, var="t"):
        return cls({(0, 0): c}, var)

    @classmethod
    def mono(cls, a, b, c=1, var="t"):
        return cls({(a, b): c}, var)

    def _check(self, other):
        if isinstance(other, int):
            return BiPoly.const(other, self.var)
        if self.var != other.var and self.terms and other.terms:
            raise ValueError(f"variable mismatch {self.var} / {other.var}")
        return other

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return BiPoly(t, self.var)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        t = {}
        for (a, b), c in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a + a2, b + b2)
                t[k] = t.get(k, 0) + c * c2
        return BiPoly(t, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = BiPoly.const(1, self.var)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiPoly.const(other, self.var)
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, a, b):
        return self.terms.get((a, b), 0)

    def coeff_in_second(self, b):
        """Coefficient of ``var^b`` as a polynomial in q (``{q_exp: c}``)."""
        return {a: c for (a, bb), c in self.terms.items() if bb == b}

    def degrees(self):
        return (max((a for a, _ in self.terms), default=0), max((b for _, b in self.terms), default=0))

    def low_degrees(self):
        return (min((a for a, _ in self.terms), default=0), min((b for _, b in self.terms), default=0))

    def leading(self):
        """Leading term under lex order on (second exponent, q exponent)."""
        k = max(self.terms, key=lambda k: (k[1], k[0]))
        return k, self.terms[k]

    def content(self):
        return math.gcd(*self.terms.values()) if self.terms else 0

    def shift(self, a, b):
        return BiPoly({(x + a, y + b): c for (x, y), c in self.terms.items()}, self.var)

    def reversed(self):
        """``q^Eq v^Ev f(1/q, 1/v)`` with (Eq, Ev) the top degrees."""
        Eq, Ev = self.degrees()
        return BiPoly({(Eq - a, Ev - b): c for (a, b), c in self.terms.items()}, self.var)

    def substitute(self, qa, qb, var="t"):
        """Replace the second variable by ``q^qa var^qb``."""
        return BiPoly({(a + qa * b, qb * b): c for (a, b), c in self.terms.items()}, var)

    def at_q(self, q):
        """Specialise q to an integer, giving ``{exp: coefficient}`` in the second variable."""
        out = {}
        for (a, b), c in self.terms.items():
            out[b] = out.get(b, 0) + c * q ** a
        return {b: c for b, c in out.items() if c}

    def divide_exact(self, d):
        """Quotient of exact division, or None."""
        if not d:
            raise ZeroDivisionError("division by zero polynomial")
        r = BiPoly(dict(self.terms), self.var)
        (la, lb), lc = d.leading()
        quot = {}
        while r:
            (a, b), c = r.leading()
            if a < la or b < lb or c % lc:
                return None
            m = BiPoly.mono(a - la, b - lb, c // lc, self.var)
            quot[(a - la, b - lb)] = c // lc
            r = r - m * d
        return BiPoly(quot, self.var)

    def to_json(self):
        return [[a, b, c] for (a, b), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    def to_text(self, qname="q"):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            mono = []
            if a:
                mono.append(qname if a == 1 else f"{qname}^{a}")
            if b:
                mono.append(self.var if b == 1 else f"{self.var}^{b}")
            body = "*".join(mono)
            if not body:
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + s)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_latex(self):
        """Terms ``q^a t^b`` written as ``p^{a-bs}`` (t = p^{-s})."""
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            if self.var == "t":
                if a == 0 and b == 0:
                    mono = ""
                else:
                    ex = (str(a) if a else "") + (f"-{b if b != 1 else ''}s" if b else "")
                    mono = f"p^{{{ex}}}"
            else:
                mono = (f"p^{{{a}}}" if a > 1 else "p" if a == 1 else "") + (
                    f"X^{{{b}}}" if b > 1 else "X" if b == 1 else "")
            coef = "" if abs(c) == 1 and mono else str(abs(c))
            parts.append(("-" if c < 0 else "+") + " " + coef + mono)
        text = " ".join(parts) or "0"
        return text[2:] if text.startswith("+ ") else text

    def __repr__(self):
        return f"BiPoly({self.to_text()})"


def _binomial_candidates(den):
    out = []
    for k, c in den.terms.items():
        if k != (0, 0):
            m = BiPoly({k: 1}, den.var)
            out.extend([1 - m, 1 + m])
    return out


class RationalFn:
    """``num / den`` with a normalised but not fully reduced representation."""

    __slots__ = ("num", "den", "den_factors")

    def __init__(self, num, den=None, den_factors=None, reduce=True):
        if isinstance(num, int):
            num = BiPoly.const(num, getattr(den, "var", "t"))
        if den is None:
            den = BiPoly.const(1, num.var)
        if isinstance(den, int):
            den = BiPoly.const(den, num.var)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if den_factors is not None:
            prod = BiPoly.const(1, den.var)
            for f in den_factors:
                prod = prod * f
            if prod != den:
                raise ValueError("denominator factors do not multiply to the denominator")
        self.num, self.den = num, den
        self.den_factors = tuple(den_factors) if den_factors else None
        if reduce:
            self._normalise()

    @property
    def var(self):
        return self.den.var

    def _normalise(self):
        num, den = self.num, self.den
        # common monomial factor
        la = min(num.low_degrees()[0], den.low_degrees()[0]) if num else den.low_degrees()[0]
        lb = min(num.low_degrees()[1], den.low_degrees()[1]) if num else den.low_degrees()[1]
        if not num:
            self.num, self.den, self.den_factors = BiPoly({}, den.var), BiPoly.const(1, den.var), None
            return
        if la or lb:
            num, den = num.shift(-la, -lb), den.shift(-la, -lb)
            self.den_factors = None
        changed = True
        while changed:
            changed = False
            for f in _binomial_candidates(den):
                qn, qd = num.divide_exact(f), den.divide_exact(f)
                if qn is not None and qd is not None:
                    num, den, changed = qn, qd, True
                    self.den_factors = None
                    break
        g = math.gcd(num.content(), den.content())
        if den.leading()[1] < 0:
            g = -g
        if g != 1:
            num = BiPoly({k: c // g for k, c in num.terms.items()}, num.var)
            den = BiPoly({k: c // g for k, c in den.terms.items()}, den.var)
            if self.den_factors and g != 1:
                self.den_factors = None
        self.num, self.den = num, den

    @classmethod
    def geometric(cls, m):
        """``1 / (1 - m)`` for a monomial ``m``."""
        f = 1 - m
        return cls(BiPoly.const(1, m.var), f, den_factors=[f])

    def __add__(self, other):
        other = _as_rf(other, self.var)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, self.den_factors, reduce=False)

    def __sub__(self, other):
        return self + (-_as_rf(other, self.var))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rf(other, self.var)
        factors = (self.den_factors + other.den_factors
                   if self.den_factors and other.den_factors else None)
        if factors is None and self.den == 1 and other.den_factors:
            factors = other.den_factors
        if factors is None and other.den == 1 and self.den_factors:
            factors = self.den_factors
        return RationalFn(self.num * other.num, self.den * other.den, factors)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other, self.var)
        return RationalFn(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = _as_rf(other, self.var)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def substitute(self, qa, qb, var="t"):
        facs = [f.substitute(qa, qb, var) for f in self.den_factors] if self.den_factors else None
        return RationalFn(self.num.substitute(qa, qb, var), self.den.substitute(qa, qb, var), facs)

    def series(self, degree):
        """Power series in the second variable up to ``degree``; coefficients are BiPoly in q."""
        d0 = self.den.coeff_in_second(0)
        if set(d0) != {0} or abs(d0[0]) != 1:
            raise ValueError("constant term of the denominator must be +-1")
        s0 = d0[0]
        dcols = {b: self.den.coeff_in_second(b) for b in range(1, degree + 1)}
        out = {}
        for n in range(degree + 1):
            acc = dict(self.num.coeff_in_second(n))
            for b, col in dcols.items():
                if b > n or not col or n - b not in out:
                    continue
                for a1, c1 in col.items():
                    for a2, c2 in out[n - b].items():
                        acc[a1 + a2] = acc.get(a1 + a2, 0) - c1 * c2
            acc = {a: c * s0 for a, c in acc.items() if c}
            if acc:
                out[n] = acc
        return BiPoly({(a, n): c for n, col in out.items() for a, c in col.items()}, self.var)

    def series_at_q(self, q, degree):
        """Integer series in the second variable after setting q to an integer."""
        num, den = self.num.at_q(q), self.den.at_q(q)
        if den.get(0) not in (1, -1):
            raise ValueError("constant term of the denominator must be +-1")
        s0 = den[0]
        out = {}
        for n in range(degree + 1):
            acc = num.get(n, 0) - sum(c * out.get(n - b, 0) for b, c in den.items() if 0 < b <= n)
            if acc:
                out[n] = acc * s0
        return out

    def to_json(self):
        return {"numerator": self.num.to_json(), "denominator": self.den.to_json(),
                "variables": ["q", self.var]}

    def to_text(self):
        if self.den_factors:
            den = "".join(f"({f.to_text()})" for f in self.den_factors)
        else:
            den = f"({self.den.to_text()})"
        return f"({self.num.to_text()}) / {den}"

    def to_latex(self):
        if self.den_factors:
            den = "".join(f"({f.to_latex()})" for f in self.den_factors)
        else:
            den = self.den.to_latex()
        return f"\\frac{{{self.num.to_latex()}}}{{{den}}}"

    def __repr__(self):
        return f"RationalFn({self.to_text()})"


def _as_rf(x, var):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, int):
        return RationalFn(BiPoly.const(x, var))
    if isinstance(x, BiPoly):
        return RationalFn(x)
    raise TypeError(f"cannot coerce {type(x).__name__}")


# -- the lattice sum and its closed form ----------------------------------------

def lattice_sum_truncated(D):
    """Sum of ``q^min(i,j) X^(i+j)`` over ``i, j >= 0`` with ``3 | i+j <= D``."""
    if D < 0:
        raise ValueError("degree must be nonnegative")
    terms = {}
    for n in range(0, D + 1, 3):
        for i in range(n + 1):
            k = (min(i, n - i), n)
            terms[k] = terms.get(k, 0) + 1
    return BiPoly(terms, "X")


def _X(a, b, c=1):
    return BiPoly.mono(a, b, c, "X")


def closed_form_pieces():
    """Pieces of the lattice sum derived from geometric series.

    Piece 1 collects pairs with both ``i, j`` divisible by 3, piece 2 the
    pairs with residues {1, 2}.  Writing the pair by its minimum and the
    gap gives products of ``G(q^3 X^6)`` and ``G(X^3)`` with G(m) = 1/(1-m).
    """
    g6 = RationalFn.geometric(_X(3, 6))
    g3 = RationalFn.geometric(_X(0, 3))
    piece1 = 2 * (g6 * g3) - g6
    piece2 = RationalFn(_X(1, 3, 2) + _X(2, 6, 2)) * g6 * g3
    return piece1, piece2


def closed_form_literal():
    f1, f2 = 1 - _X(0, 3), 1 - _X(3, 6)
    num = _X(0, 0) + _X(0, 3) + _X(1, 3, 2) + _X(2, 6, 2)
    return RationalFn(num, f1 * f2, den_factors=[f1, f2])


def closed_form():
    """Closed form of the lattice sum; checked against the geometric derivation."""
    lit = closed_form_literal()
    p1, p2 = closed_form_pieces()
    if p1 + p2 != lit:
        raise AssertionError("geometric derivation disagrees with the closed form")
    return lit


def integral_series_from_theta(D):
    """Sum of ``q^(theta_1+theta_2+theta_3) t^det`` over triples with ``vb + vc <= D``."""
    terms = {}
    for n in range(0, D + 1, 3):
        for vb in range(n + 1):
            v = ValuationTriple(n // 3, vb, n - vb)
            k = (theta(1, v) + theta(2, v) + theta(3, v), det_valuation(v))
            terms[k] = terms.get(k, 0) + 1
    return BiPoly(terms, "t")


def substitute_to_zeta(rf):
    qa, qb = SUBSTITUTION
    if isinstance(rf, BiPoly):
        return rf.substitute(qa, qb, "t")
    return rf.substitute(qa, qb, "t")


def local_zeta():
    """The local pro-isomorphic zeta function as a rational function in (q, t)."""
    return substitute_to_zeta(closed_form())


def expected_zeta():
    f1 = 1 - BiPoly.mono(285, 102)
    f2 = 1 - BiPoly.mono(573, 204)
    num = BiPoly({(0, 0): 1, (285, 102): 1, (286, 102): 2, (572, 204): 2})
    return RationalFn(num, f1 * f2, den_factors=[f1, f2])


# -- functional equations -------------------------------------------------------

def invert_variables(Z):
    """``Z(1/q, 1/t)`` as a rational function (monomials cleared)."""
    (Eqn, Etn), (Eqd, Etd) = Z.num.degrees(), Z.den.degrees()
    num, den = Z.num.reversed(), Z.den.reversed()
    # Z(1/q,1/t) = q^(Eqd-Eqn) t^(Etd-Etn) num/den
    sa, sb = Eqd - Eqn, Etd - Etn
    num = num.shift(max(sa, 0), max(sb, 0))
    den = den.shift(max(-sa, 0), max(-sb, 0))
    return RationalFn(num, den)


def _monomial_ratio(P, Q):
    """``(sign, a, b)`` with ``P = sign q^a t^b Q``, or None."""
    if len(P.terms) != len(Q.terms) or not P:
        return None
    (pa, pb), pc = P.leading()
    (qa, qb), qc = Q.leading()
    if pc not in (qc, -qc):
        return None
    s, a, b = pc // qc, pa - qa, pb - qb
    for (x, y), c in Q.terms.items():
        if P.terms.get((x + a, y + b)) != s * c:
            return None
    return s, a, b


def functional_equation_test(Z):
    """``(a, b, c)`` with ``Z(1/q, 1/t) = (-1)^a q^b t^c Z(q, t)``, or None."""
    if not Z.num:
        raise ValueError("Z must be nonzero")
    (Eqn, Etn), (Eqd, Etd) = Z.num.degrees(), Z.den.degrees()
    P = Z.num.reversed() * Z.den
    Q = Z.den.reversed() * Z.num
    r = _monomial_ratio(P, Q)
    if r is None:
        return None
    s, a, b = r
    return (0 if s > 0 else 1, a + Eqd - Eqn, b + Etd - Etn)


def funceq_verdict(Z):
    r = functional_equation_test(Z)
    if r is None:
        return "no functional equation: ratio is not ±p^b t^c"
    a, b, c = r
    return f"functional equation: Z(1/p, 1/t) = (-1)^{a} p^{b} t^{c} Z(p, t)"
