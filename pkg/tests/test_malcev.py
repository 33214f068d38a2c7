import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from liezeta import malcev
from liezeta.lattice import build_lambda
from liezeta.verify import PHI4


@pytest.fixture(scope="module")
def G():
    return malcev.MalcevGroup(build_lambda(), 4)


def test_bch_degree_four_matches_reference():
    bch = malcev.bch_truncated(4)
    assert bch.as_element() == bch.algebra.parse(PHI4)


@pytest.mark.parametrize("c, m", [(1, 1), (2, 2), (3, 12), (4, 24), (5, 720), (6, 1440)])
def test_denominators(c, m):
    assert malcev.m_of(c) == m


def test_bch_low_degree():
    bch = malcev.bch_truncated(2)
    assert bch.as_element() == bch.algebra.parse("X + Y + 1/2 XY")


def test_bch_invalid_class():
    with pytest.raises(ValueError):
        malcev.bch_truncated(0)


def test_associative_series_low_terms():
    h = malcev.hausdorff_associative(2)
    assert h[(0,)] == 1 and h[(1,)] == 1
    assert h[(0, 1)] == Fraction(1, 2) and h[(1, 0)] == Fraction(-1, 2)
    assert (0, 0) not in h


def test_product_of_generators(G):
    L = G.lattice
    x, y = L.parse("24x"), L.parse("24y")
    assert G.mul(x, y) == L.parse("24x + 24y + 288xy + 1152xyy - 1152xyx - 13824xyxy")


def test_group_law_suite(G):
    rep = malcev.group_law_suite(G, samples=40, seed=7)
    assert rep.ok, rep.failures


def test_commutators_match_brackets(G):
    rng = random.Random(11)
    for _ in range(20):
        xs = [G.random_element(rng, 3) for _ in range(4)]
        assert malcev.group_commutator_vs_lie(G, xs).agree


def test_two_fold_commutator_leading_term(G):
    L = G.lattice
    u, v = L.parse("24x"), L.parse("24z")
    c = G.commutator(u, v)
    # leading term is the bracket; higher corrections live in gamma_3
    assert {L.weights[k] for k in (c - L.bracket(u, v)).coeffs} <= {3, 4}


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_limit_congruence(G, p, k):
    rng = random.Random(p * 10 + k)
    L = G.lattice
    u = L.element([rng.randint(-9, 9) for _ in range(L.dim)])
    v = L.element([rng.randint(-9, 9) for _ in range(L.dim)])
    rep = malcev.limit_congruence(G, u, v, k, p)
    assert rep.ok
    assert rep.to_json()["ok"]


def test_limit_congruence_small_primes(G):
    L = G.lattice
    with pytest.raises(ValueError):
        malcev.limit_congruence(G, L.parse("x"), L.parse("y"), 1, 3)
    with pytest.raises(ValueError):
        malcev.limit_congruence(G, L.parse("x"), L.parse("y"), 0, 5)


def test_coset_check(G):
    rng = random.Random(5)
    L = G.lattice
    for _ in range(5):
        x = G.random_element(rng, 2)
        w = L.element([rng.randint(-3, 3) for _ in range(L.dim)])
        assert malcev.coset_check(G, x, w, 2, 5)


def test_product_leaving_group_detected():
    L = build_lambda()
    G = malcev.MalcevGroup(L, 4)
    # 2x and 2y are not in 24 Lambda, so no check is made
    G.mul(L.parse("2x"), L.parse("2y"))
    assert not G.in_group(L.parse("2x"))


_G = malcev.MalcevGroup(build_lambda(), 4)


@st.composite
def group_elements(draw):
    L = _G.lattice
    return L.element([24 * draw(st.integers(-3, 3)) for _ in range(L.dim)])


@settings(max_examples=25, deadline=None)
@given(group_elements(), group_elements(), group_elements())
def test_associativity_property(a, b, c):
    assert _G.mul(_G.mul(a, b), c) == _G.mul(a, _G.mul(b, c))


@settings(max_examples=25, deadline=None)
@given(group_elements(), group_elements())
def test_inverse_of_product(a, b):
    assert _G.mul(_G.mul(a, b), _G.mul(-b, -a)) == _G.lattice.zero()
