import numpy as np
import pytest

from hypercube_walk.core import ConfigurationError
from hypercube_walk.dense import build_dense_step, cross_validate


def test_n1_loopless_is_a_permutation():
    u = build_dense_step(1, 0.0, [])
    # coin is the 1x1 identity, so the step is just the single-edge swap
    np.testing.assert_array_equal(u.matrix, [[0, 1], [1, 0]])
    assert u.orthogonality_error() == 0.0


def test_n3_single_marked_orthogonal():
    u = build_dense_step(3, 0.0, [0])
    assert u.matrix.shape == (24, 24)
    np.testing.assert_allclose(u.matrix @ u.matrix.T, np.eye(24), atol=1e-12)


def test_n3_with_loop_dimension():
    u = build_dense_step(3, 3 / 8, [0, 5])
    assert u.matrix.shape == (32, 32) and u.coin_dim == 4
    assert u.orthogonality_error() < 1e-12


def test_refuses_large_n():
    with pytest.raises(ConfigurationError):
        build_dense_step(7, 0.0, [0])


def test_cross_validate_examples():
    assert cross_validate(3, 0.0, [0], 50, trials=3, seed=0).max_deviation < 1e-9
    assert cross_validate(4, 4 / 16 * 2, [0, 3], 100, trials=3, seed=1).max_deviation < 1e-9


def test_zero_steps_exact():
    report = cross_validate(3, 0.1, [2], 0, trials=2, seed=0)
    assert report.max_deviation == 0.0 and report.passed
