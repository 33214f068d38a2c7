import itertools

import pytest
from hypothesis import given, settings, strategies as st

from liezeta.free_lie import LieInputError
from liezeta.lattice import (
    LAMBDA_BASIS, R1, R2, build_lambda, free_algebra, ideal_closure, membership, relation_ideal,
    same_weight_check,
)


@pytest.fixture(scope="module")
def L():
    return build_lambda()


def test_ideal_rank():
    assert relation_ideal().rank == 7


@pytest.mark.parametrize("word", ["YZYX", "ZYZX", "YZYY", "YZYZ", "ZYZZ", "YZYZ - YZZY"])
def test_ideal_contains(word):
    F = free_algebra()
    assert F.parse(word) in relation_ideal()


@pytest.mark.parametrize("word", ["X", "XY", "YZY", "XYXX", "2 XYYY"])
def test_ideal_excludes(word):
    assert free_algebra().parse(word) not in relation_ideal()


def test_membership_of_relations_and_brackets():
    F = free_algebra()
    I = relation_ideal()
    r1, r2 = F.parse(R1), F.parse(R2)
    assert membership(I, r1) and membership(I, r2)
    assert membership(I, F.bracket(r1, F.parse("Z")) - 3 * r2)


def test_ideal_is_bracket_closed():
    F = free_algebra()
    I = relation_ideal()
    for v in I.elements():
        for i in range(3):
            assert F.bracket(v, F.basis_element(i)) in I


def test_ideal_rejects_fractional_generators():
    F = free_algebra()
    with pytest.raises(LieInputError):
        ideal_closure([F.parse("1/2 XYXX")])
    with pytest.raises(LieInputError):
        ideal_closure([])


def test_fractional_vector_not_member():
    F = free_algebra()
    assert F.parse("1/2 YZYX") not in relation_ideal()
    assert relation_ideal().contains_rational(F.parse("1/2 YZYX"))


def test_lambda_shape(L):
    assert L.dim == 25
    assert tuple(L.names) == LAMBDA_BASIS
    assert L.graded_ranks() == (3, 3, 6, 13)
    assert L.lower_central_series() == [25, 22, 19, 13, 0]


def test_lambda_identities(L):
    assert 2 * L.parse("xyzy") == L.parse("xzyy + xyyz")
    assert 2 * L.parse("xzyz") == L.parse("xyzz + xzzy")
    assert L.parse("yzyx") == 0
    assert L.parse("zyzx") == 0


def test_relations_vanish_in_lambda(L):
    assert L.parse(R1.lower()) == 0
    assert L.parse(R2.lower()) == 0


def test_bracket_is_filtered_not_graded(L):
    # yzy has weight 3 but equals a weight-4 basis element in the quotient
    assert L.parse("yzy") == -L.parse("xyxx")
    assert L.filtration_failures() == []
    assert L.torus_grading_failures() == []


def test_lambda_structure_constants(L):
    assert L.structure_constants_integral()
    assert L.is_antisymmetric()
    assert L.jacobi_failures() == []
    assert L.projection_is_homomorphism()


def test_same_weight_expansions(L):
    rep = same_weight_check(L)
    assert rep.ok
    assert rep.checked == 81
    assert rep.decompositions["xyyz"] == L.parse("-xzyy + 2xyzy")


def test_lift_then_project(L):
    for i in range(L.dim):
        e = L.basis_element(i)
        assert L.project(L.lift(e)) == e


def test_unknown_generator(L):
    with pytest.raises(LieInputError):
        L.parse("xw")


_L = build_lambda()


@st.composite
def lam_elements(draw):
    return _L.element([draw(st.integers(-3, 3)) for _ in range(_L.dim)])


@settings(max_examples=40, deadline=None)
@given(lam_elements(), lam_elements(), lam_elements())
def test_jacobi_random(a, b, c):
    L = _L
    s = L.bracket(L.bracket(a, b), c) + L.bracket(L.bracket(b, c), a) + L.bracket(L.bracket(c, a), b)
    assert s == 0


@settings(max_examples=40, deadline=None)
@given(lam_elements(), lam_elements())
def test_projection_respects_brackets(a, b):
    L = _L
    F = L.ambient
    assert L.project(F.bracket(L.lift(a), L.lift(b))) == L.bracket(a, b)
