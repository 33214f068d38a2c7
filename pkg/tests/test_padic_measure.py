import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from liezeta import padic_measure as pm
from liezeta.autgroup import UnipotentParams

V = pm.ValuationTriple


def test_triple_validation():
    with pytest.raises(ValueError):
        V(1, 1, 1)
    with pytest.raises(ValueError):
        V(-1, 0, -3)


def test_triples_enumeration():
    assert [tuple(v) for v in pm.valuation_triples(3)] == [
        (0, 0, 0), (1, 0, 3), (1, 1, 2), (1, 2, 1), (1, 3, 0), (2, 3, 3)]


@pytest.mark.parametrize("i, v, e", [(1, (0, 0, 0), 0), (1, (1, 1, 2), 16), (3, (1, 1, 2), 201),
                                     (2, (1, 0, 3), 69), (1, (1, 0, 3), 15)])
def test_theta_values(i, v, e):
    assert pm.theta(i, V(*v)) == e


def test_theta_bad_stage():
    with pytest.raises(ValueError):
        pm.theta(4, V(0, 0, 0))


@pytest.mark.parametrize("v, d", [((0, 0, 0), 0), ((1, 1, 2), 102), ((2, 3, 3), 204)])
def test_det_valuation(v, d):
    assert pm.det_valuation(V(*v)) == d


def test_det_is_sum_of_column_twists():
    for v in pm.valuation_triples(6):
        assert sum(pm.column_valuation(j, v) for j in range(25)) == pm.det_valuation(v)


def test_scaling_model_reproduces_closed_forms():
    for v in pm.valuation_triples(6):
        for i in (1, 2, 3):
            assert pm.model_exponent(i, v) == pm.theta(i, v)


def test_stage_parameter_counts():
    assert len(pm.stage_parameters(1)) == 6
    assert len(pm.stage_parameters(2)) == 18
    assert len(pm.stage_parameters(3)) == 39
    assert len(pm.stage_parameters(1, split_upsilon=True)) == 7


def test_bruteforce_examples():
    assert pm.theta_bruteforce(1, V(0, 0, 0), 5, 1) == 1
    assert pm.theta_bruteforce(1, V(1, 1, 2), 5, 4) == Fraction(5) ** 16
    assert pm.theta_bruteforce(2, V(1, 0, 3), 7, 7) == Fraction(7) ** 69


def test_bruteforce_needs_enough_precision():
    assert pm.required_level(2, V(1, 0, 3)) == 7
    with pytest.raises(pm.PrecisionError):
        pm.theta_bruteforce(2, V(1, 0, 3), 7, 5)


def test_bruteforce_is_stable_above_required_level():
    v = V(1, 2, 1)
    K = pm.required_level(1, v)
    assert pm.theta_bruteforce(1, v, 5, K) == pm.theta_bruteforce(1, v, 5, K + 2)


@pytest.mark.parametrize("p", [5, 7])
def test_oracle_agreement_small(p):
    for v in pm.valuation_triples(2):
        for i in (1, 2, 3):
            K = pm.required_level(i, v)
            assert pm.theta_bruteforce(i, v, p, K) == Fraction(p) ** pm.theta(i, v)


def test_shared_parameter_carries_the_min_term():
    for v in pm.valuation_triples(6):
        K = pm.required_level(1, v)
        split = pm.theta_bruteforce(1, v, 5, K, split_upsilon=True)
        assert split == Fraction(5) ** pm.split_upsilon_exponent(v)
        assert pm.model_exponent(1, v, split_upsilon=True) == pm.split_upsilon_exponent(v)
        # counting the shared entry twice overcounts exactly when the twist is nontrivial
        assert (split != Fraction(5) ** pm.theta(1, v)) == (tuple(v) != (0, 0, 0))


@given(st.integers(0, 6), st.integers(0, 6))
def test_monotone_in_vb_vc(vb, vc):
    if (vb + vc) % 3:
        return
    v = V((vb + vc) // 3, vb, vc)
    for dvb, dvc in ((3, 0), (0, 3), (1, 2), (2, 1)):
        w = V(v.va + 1, vb + dvb, vc + dvc)
        for i in (1, 2, 3):
            assert pm.theta(i, w) >= pm.theta(i, v)
        assert pm.det_valuation(w) >= pm.det_valuation(v)


def test_lifting_identity():
    assert pm.lifting_check(V(0, 0, 0), UnipotentParams(), 5, 2)


def test_lifting_drops_top_weight_delta():
    params = UnipotentParams(delta={(1, 20): Fraction(1, 5)})
    assert pm.lifting_check(V(0, 0, 0), params, 5, 4)
    trimmed = pm.truncate_params(params, 4)
    assert trimmed.delta == {}


def test_lifting_precondition():
    params = UnipotentParams(upsilon=Fraction(1, 5))
    with pytest.raises(ValueError):
        pm.lifting_check(V(0, 0, 0), params, 5, 3)


def test_lifting_random_cases():
    rng = random.Random(21)
    for _ in range(20):
        v, params, stage = pm.random_lifting_case(rng, 5)
        assert pm.lifting_check(v, params, 5, stage)


def test_theta_table():
    rows = pm.theta_table([V(1, 1, 2)], 5, K=4)
    assert len(rows) == 3
    assert all(r["match"] for r in rows)
    assert rows[0]["exponent"] == 16 and rows[0]["level"] == 4
