"""Torus-twisted measures of unipotent parameters: closed forms and a counting oracle."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .autgroup import PARAMETER_LAYOUT, UnipotentParams, is_integral_by_generators, torus_matrix, unipotent_matrix
from .lattice import build_lambda


class PrecisionError(ValueError):
    pass


@dataclass(frozen=True)
class ValuationTriple:
    va: int
    vb: int
    vc: int

    def __post_init__(self):
        if min(self.va, self.vb, self.vc) < 0:
            raise ValueError("valuations must be nonnegative")
        if 3 * self.va != self.vb + self.vc:
            raise ValueError("torus valuations need 3 va = vb + vc")

    def __iter__(self):
        return iter((self.va, self.vb, self.vc))


def valuation_triples(max_b, max_c=None):
    """All triples with ``vb <= max_b`` and ``vc <= max_c``."""
    max_c = max_b if max_c is None else max_c
    for vb in range(max_b + 1):
        for vc in range(max_c + 1):
            if (vb + vc) % 3 == 0:
                yield ValuationTriple((vb + vc) // 3, vb, vc)


_COEFFS = {2: (24, 15, 15), 3: (66, 45, 45)}


def theta(i, v):
    """Exponent ``e`` with theta_i(h) = p^e."""
    va, vb, vc = v
    if i == 1:
        return 3 * va + 4 * vb + 4 * vc + min(vb, vc)
    if i in _COEFFS:
        a, b, c = _COEFFS[i]
        return a * va + b * vb + c * vc
    raise ValueError("stage must be 1, 2 or 3")


def det_valuation(v):
    va, vb, vc = v
    return 33 * va + 23 * vb + 23 * vc


def column_valuation(j, v):
    """Valuation of the torus eigenvalue on basis column ``j`` (0-based)."""
    d = build_lambda().multidegrees[j]
    return sum(a * b for a, b in zip(d, v))


def stage_parameters(i, split_upsilon=False):
    """Free parameters of the first three rows living in weight-``i + 1`` columns."""
    if i not in (1, 2, 3):
        raise ValueError("stage must be 1, 2 or 3")
    L = build_lambda()
    out = []
    for name, cells in PARAMETER_LAYOUT:
        cols = [c for _, c in cells]
        if L.weights[cols[0]] != i + 1:
            continue
        if split_upsilon and len(cols) > 1:
            out.extend((f"{name}[{k}]", [c]) for k, c in enumerate(cols))
        else:
            out.append((name, cols))
    return out


def required_level(i, v):
    return max(column_valuation(c, v) for _, cols in stage_parameters(i) for c in cols)


@lru_cache(maxsize=None)
def _count(p, K, vals, backend):
    return kernels.count_cosets(p, K, list(vals), backend=backend)


def theta_bruteforce(i, v, p, K, backend=None, split_upsilon=False):
    """Measure of the stage-``i`` parameters whose twisted images are integral.

    Each parameter ranges over ``p^-K Z / Z``; it survives when multiplying it
    by the eigenvalue of every column it occupies gives an integer.  Counts
    are normalised so that integral parameters have measure 1.
    """
    need = required_level(i, v)
    if K < need:
        raise PrecisionError(f"level {K} below the required {need}")
    total = Fraction(1)
    for _, cols in stage_parameters(i, split_upsilon):
        vals = tuple(sorted(column_valuation(c, v) for c in cols))
        total *= _count(p, K, vals, backend or kernels.BACKEND)
    return total


def model_exponent(i, v, split_upsilon=False):
    """Exponent predicted by the scaling model: sum of min column valuations."""
    return sum(min(column_valuation(c, v) for c in cols) for _, cols in stage_parameters(i, split_upsilon))


def split_upsilon_exponent(v):
    """Exponent obtained when the shared weight-2 parameter is counted twice."""
    va, vb, vc = v
    return theta(1, v) + va + max(vb, vc)


# -- lifting condition --------------------------------------------------------

def _column_weights():
    return build_lambda().weights


def truncate_params(params, stage):
    """Zero every parameter sitting in a column of weight ``>= stage``."""
    w = _column_weights()
    rows = params.rows()
    for r in range(3):
        for j in range(3, 25):
            if w[j] >= stage:
                rows[r][j] = Fraction(0)
    return UnipotentParams.from_rows(rows)


def lifting_check(v, params, p, stage):
    """Lift an element integral on ``Lambda / V_stage`` to an integral automorphism.

    ``V_stage`` is spanned by basis elements of weight ``>= stage``.  The
    product ``n h`` must be p-integral in the columns of weight below
    ``stage``; the lift replaces ``n`` by the element whose parameters in
    the higher columns are zero.  Returns True iff the lift agrees with
    ``n h`` modulo ``V_stage`` and is p-integral.
    """
    if not 2 <= stage <= 5:
        raise ValueError("stage must lie in 2..5")
    w = _column_weights()
    low = [j for j in range(25) if w[j] < stage]
    h = torus_matrix(p ** v.va, p ** v.vb, p ** v.vc)
    nh = unipotent_matrix(params) @ h
    if any(Fraction(nh.rows[r][j]).denominator % p == 0 for r in range(25) for j in low):
        raise ValueError("element is not integral modulo the chosen stage")
    g = unipotent_matrix(truncate_params(params, stage)) @ h
    agree = all(g.rows[r][j] == nh.rows[r][j] for r in range(25) for j in low)
    return agree and is_integral_by_generators(g, p)


def random_lifting_case(rng, p, max_b=3):
    """Valuations, stage and parameters whose truncation is integral by construction."""
    vs = list(valuation_triples(max_b))
    v = rng.choice(vs)
    stage = rng.randint(2, 5)
    w = _column_weights()
    rows = UnipotentParams().rows()
    for r, j in itertools.product(range(3), range(3, 25)):
        if r == 1 and j == 4 or r == 2 and j == 3:
            continue
        if w[j] < stage:
            e = rng.randint(0, column_valuation(j, v))
        else:
            e = rng.randint(0, 3)
        rows[r][j] = Fraction(rng.randint(-p + 1, p - 1), p ** e)
    rows[2][4] = rows[1][3]
    if w[3] < stage:
        # the shared entry must survive both of its column twists
        e = min(column_valuation(3, v), column_valuation(4, v))
        rows[1][3] = rows[2][4] = Fraction(rng.randint(-p + 1, p - 1), p ** e)
    return v, UnipotentParams.from_rows(rows), stage


def theta_table(vs, p, K=None, backend=None):
    """Rows ``(i, va, vb, vc, exponent, oracle, match)`` for JSON export."""
    out = []
    for v in vs:
        for i in (1, 2, 3):
            level = max(K or 0, required_level(i, v))
            oracle = theta_bruteforce(i, v, p, level, backend)
            e = theta(i, v)
            out.append({"i": i, "va": v.va, "vb": v.vb, "vc": v.vc, "level": level,
                        "exponent": e, "oracle": str(oracle), "match": oracle == Fraction(p) ** e})
    return out
