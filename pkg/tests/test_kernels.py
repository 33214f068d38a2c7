import random

import numpy as np
import pytest

from liezeta import _kernels_py, autgroup, kernels, zlinalg

compiled = pytest.mark.skipif("cython" not in kernels.available_backends(),
                              reason="compiled kernels not built")


def test_default_backend_is_available():
    assert kernels.BACKEND in kernels.available_backends()
    with pytest.raises(ValueError):
        kernels.count_cosets(5, 2, [1], backend="fortran")


@pytest.mark.parametrize("backend", kernels.available_backends())
@pytest.mark.parametrize("p, K, vals, expected", [
    (5, 1, [0], 1), (5, 4, [1], 5), (7, 5, [3, 2], 49), (5, 3, [], 125), (5, 2, [4], 25),
])
def test_count_cosets(backend, p, K, vals, expected):
    assert kernels.count_cosets(p, K, vals, backend=backend) == expected


def test_batched_consistency_matches_rank():
    rng = random.Random(1)
    q = 5
    Ms, bs, expected = [], [], []
    for _ in range(200):
        M = [[rng.randrange(q) if rng.random() < 0.3 else 0 for _ in range(6)] for _ in range(26)]
        b = [rng.randrange(q) if rng.random() < 0.2 else 0 for _ in range(26)]
        Ms.append(M)
        bs.append(b)
        aug = [row + [x] for row, x in zip(M, b)]
        expected.append(zlinalg.rank_mod_p(M, q) == zlinalg.rank_mod_p(aug, q))
    got = _kernels_py.consistent_mod_q(np.array(Ms, dtype=np.int64), np.array(bs, dtype=np.int64), q)
    assert list(got) == expected


@pytest.fixture(scope="module")
def python_slice():
    T = autgroup.kernel_tensors(5)
    return T, kernels.scan_gl3(5, T, 1, 2, backend="python")


def test_python_backend_classification_slice(python_slice):
    _, (found, _) = python_slice
    pred = {m for m in autgroup.predicted_linear_parts(5) if m[0] == 1}
    assert set(found) == pred


@compiled
def test_backends_agree_on_a_slice(python_slice):
    T, (found, survivors) = python_slice
    c_found, c_survivors = kernels.scan_gl3(5, T, 1, 2, backend="cython")
    assert sorted(c_found) == sorted(found) and c_survivors == survivors
