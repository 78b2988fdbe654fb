import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csraloha.sensing import (ContentionInstance, build_vector_analog,
                              build_vector_digital,
                              generate_bernoulli_matrix, measure)


def test_matrix_deterministic():
    a = generate_bernoulli_matrix(4, 8, np.random.default_rng(11))
    b = generate_bernoulli_matrix(4, 8, np.random.default_rng(11))
    np.testing.assert_array_equal(a, b)


def test_matrix_entries_and_columns():
    m = generate_bernoulli_matrix(16, 32, np.random.default_rng(0))
    assert set(np.unique(m)) == {-1.0, 1.0}
    for j in range(32):
        assert m[:, j] @ m[:, j] == 16.0


def test_matrix_entry_mean():
    m = generate_bernoulli_matrix(1000, 1000, np.random.default_rng(1))
    assert abs(m.mean()) < 0.004


def test_matrix_rejects_zero_dims():
    with pytest.raises(ValueError):
        generate_bernoulli_matrix(0, 5, np.random.default_rng(0))
    with pytest.raises(ValueError):
        generate_bernoulli_matrix(5, 0, np.random.default_rng(0))


def test_build_vector_analog():
    v, sup = build_vector_analog(np.array([5.0, 0.1, 4.7]), 4.60517)
    np.testing.assert_array_equal(v, [5.0, 0.0, 4.7])
    np.testing.assert_array_equal(sup, [0, 2])


def test_build_vector_analog_empty_and_boundary():
    v, sup = build_vector_analog(np.array([0.5, 1.0]), 4.0)
    assert not v.any() and sup.size == 0
    # a gain exactly at the threshold contends (inclusive rule)
    v, sup = build_vector_analog(np.array([4.0]), 4.0)
    np.testing.assert_array_equal(sup, [0])


def test_build_vector_digital():
    v, sup = build_vector_digital(np.array([4.0, 4.8]), 3.912, 4.60517)
    np.testing.assert_array_equal(v, [1.0, 0.0])
    v, sup = build_vector_digital(np.array([4.8]), 4.60517, np.inf)
    np.testing.assert_array_equal(v, [1.0])
    v, sup = build_vector_digital(np.array([1.0, 2.0]), 3.0, 4.0)
    assert not v.any()


def test_build_vector_digital_rejects_inverted_interval():
    with pytest.raises(ValueError):
        build_vector_digital(np.array([1.0]), 4.0, 3.0)
    with pytest.raises(ValueError):
        build_vector_digital(np.array([1.0]), 0.0, 3.0)


def test_digital_top_interval_matches_analog_support():
    gains = -np.log1p(-np.random.default_rng(3).random(200))
    zeta = 1.0
    _, sup_a = build_vector_analog(gains, zeta)
    _, sup_d = build_vector_digital(gains, zeta, np.inf)
    np.testing.assert_array_equal(sup_a, sup_d)


def test_measure():
    m = generate_bernoulli_matrix(6, 10, np.random.default_rng(5))
    assert not measure(m, np.zeros(10)).any()
    v = np.zeros(10)
    v[3] = 2.5
    np.testing.assert_array_equal(measure(m, v), 2.5 * m[:, 3])
    v2 = np.zeros(10)
    v2[[3, 7]] = 1.0
    y = measure(m, v2)
    assert set(np.unique(y)) <= {-2.0, 0.0, 2.0}


def test_measure_dimension_mismatch():
    m = generate_bernoulli_matrix(6, 10, np.random.default_rng(5))
    with pytest.raises(ValueError):
        measure(m, np.zeros(9))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_measure_linearity(seed):
    rng = np.random.default_rng(seed)
    m = generate_bernoulli_matrix(5, 12, rng)
    v1, v2 = rng.normal(size=12), rng.normal(size=12)
    np.testing.assert_allclose(measure(m, v1 + v2),
                               measure(m, v1) + measure(m, v2),
                               rtol=1e-12, atol=1e-12)


def test_contention_instance():
    m = generate_bernoulli_matrix(8, 10, np.random.default_rng(9))
    gains = np.array([0.1] * 9 + [5.0])
    inst = ContentionInstance.analog(m, gains, 4.6)
    np.testing.assert_array_equal(inst.true_support, [9])
    np.testing.assert_array_equal(inst.measurement, m @ inst.sparse_vector)
    inst = ContentionInstance.digital(m, gains, 4.6, np.inf)
    np.testing.assert_array_equal(inst.sparse_vector[inst.true_support], [1.0])
