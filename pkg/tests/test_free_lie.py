import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from liezeta import zlinalg
from liezeta.free_lie import (
    F_BASIS_34, FreeNilpotentAlgebra, LieInputError, hall_basis, verify_rewrite_identities,
)
from liezeta.lattice import free_algebra
from liezeta.verify import HALL_NAMES_34


def test_hall_basis_34_names_in_order():
    assert tuple(b.name for b in hall_basis(3, 4)) == HALL_NAMES_34


def test_graded_dimensions():
    assert FreeNilpotentAlgebra(3, 4).graded_dimensions() == (3, 3, 8, 18)
    # Witt formula: 2 generators, class 5 -> 2, 1, 2, 3, 6
    assert FreeNilpotentAlgebra(2, 5).graded_dimensions() == (2, 1, 2, 3, 6)
    assert FreeNilpotentAlgebra(3, 2).graded_dimensions() == (3, 3)


def test_hall_conditions_hold():
    for b in hall_basis(3, 4):
        if b.is_leaf:
            continue
        assert b.left.ordinal > b.right.ordinal
        if not b.left.is_leaf:
            assert b.left.right.ordinal <= b.right.ordinal


def test_small_bases():
    assert [b.name for b in hall_basis(2, 3)] == ["X", "Y", "YX", "YXX", "YXY"]
    assert [b.name for b in hall_basis(3, 2)] == ["X", "Y", "Z", "YX", "ZX", "ZY"]


def test_bad_sizes():
    with pytest.raises(LieInputError):
        hall_basis(0, 3)
    with pytest.raises(LieInputError):
        hall_basis(2, 0)


def test_multidegrees_of_bracket_nodes():
    for b in hall_basis(3, 4):
        assert sum(b.multidegree) == b.weight


def test_antisymmetry_of_generators():
    F = free_algebra()
    assert F.parse("XY") == -F.parse("YX")
    assert F.parse("XX") == 0


def test_known_normal_forms():
    F = free_algebra()
    assert F.parse("YZYZ") == F.parse("2YZZY + ZYYZ")
    assert F.parse("(YX)(ZX)") == F.parse("ZXXY - ZXYX")
    assert F.parse("[X,Y]") == F.parse("XY")
    assert F.parse("1/12 XYX") * 12 == F.parse("XYX")


def test_rewrite_identities():
    rep = verify_rewrite_identities()
    assert rep.ok
    assert rep.checked == 84


def test_jacobi_and_antisymmetry_tables():
    F = free_algebra()
    assert F.is_antisymmetric()
    assert F.jacobi_failures() == []
    assert F.is_graded()
    assert F.structure_constants_integral()


def test_left_normed_basis_is_unimodular():
    F = free_algebra()
    M, Minv = F.change_of_basis(F_BASIS_34)
    assert zlinalg.det(M) in (1, -1)
    assert all(x.denominator == 1 for row in Minv for x in row)


def test_change_of_basis_rejects_dependent_words():
    F = free_algebra()
    words = list(F_BASIS_34)
    words[-1] = "YZZY"   # already expressible through the others
    with pytest.raises(LieInputError):
        F.change_of_basis(words)


@pytest.mark.parametrize("text", ["X +", "(XY", "XW", "", "X)"])
def test_parse_errors(text):
    with pytest.raises(LieInputError):
        free_algebra().parse(text)


def test_mixing_algebras_is_an_error():
    A, B = FreeNilpotentAlgebra(2, 2), FreeNilpotentAlgebra(2, 2)
    with pytest.raises(LieInputError):
        A.bracket(A.basis_element(0), B.basis_element(1))


def test_json_export():
    d = FreeNilpotentAlgebra(2, 3).to_json()
    assert [b["name"] for b in d["basis"]] == ["X", "Y", "YX", "YXX", "YXY"]
    first = d["tensor"][0]
    assert (first["i"], first["j"], first["coeffs"]) == (0, 1, [[2, "-1/1"]])


def test_element_repr():
    F = free_algebra()
    assert repr(F.parse("2XY - ZX")) == "-2*YX - ZX"
    assert repr(F.zero()) == "0"


def test_class_truncation():
    F = FreeNilpotentAlgebra(2, 2)
    assert F.parse("XYX") == 0


_coeff = st.integers(-4, 4)


@st.composite
def f33_elements(draw):
    F = _F33
    return F.element([draw(_coeff) for _ in range(F.dim)])


_F33 = FreeNilpotentAlgebra(3, 3)


@settings(max_examples=60, deadline=None)
@given(f33_elements(), f33_elements(), f33_elements())
def test_jacobi_on_random_elements(a, b, c):
    F = _F33
    total = F.bracket(F.bracket(a, b), c) + F.bracket(F.bracket(b, c), a) + F.bracket(F.bracket(c, a), b)
    assert total == 0
    assert F.bracket(a, b) == -F.bracket(b, a)


@settings(max_examples=40, deadline=None)
@given(f33_elements(), f33_elements(), st.integers(-5, 5))
def test_bracket_bilinear(a, b, k):
    F = _F33
    assert F.bracket(k * a + b, b) == k * F.bracket(a, b)
