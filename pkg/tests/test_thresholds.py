import math

import numpy as np
import pytest
from scipy.special import comb

from csraloha.channel import GAIN_LAW
from csraloha.thresholds import (ThresholdSet, analog_threshold,
                                 digital_thresholds, expected_contenders)


def test_analog_threshold_values():
    assert analog_threshold(100, 1) == pytest.approx(4.60517, abs=1e-5)
    assert analog_threshold(100, 5) == pytest.approx(2.99573, abs=1e-5)


def test_analog_threshold_rejects_degenerate():
    with pytest.raises(ValueError):
        analog_threshold(100, 100)
    with pytest.raises(ValueError):
        analog_threshold(100, 0)


def test_analog_threshold_decreasing_in_s():
    vals = [analog_threshold(100, s) for s in range(1, 100)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_digital_thresholds_values():
    np.testing.assert_allclose(digital_thresholds(100, 1, 2).levels,
                               [3.91202, 4.60517], atol=1e-5)
    np.testing.assert_allclose(digital_thresholds(100, 1, 4).levels,
                               [3.21888, 3.50656, 3.91202, 4.60517], atol=1e-5)


def test_digital_k1_collapses_to_analog():
    assert digital_thresholds(100, 1, 1).levels[0] == analog_threshold(100, 1)


def test_digital_thresholds_rejects_full_population():
    with pytest.raises(ValueError):
        digital_thresholds(100, 25, 4)  # s*k = n degenerates to zeta_1 = 0
    with pytest.raises(ValueError):
        digital_thresholds(100, 1, 0)


@pytest.mark.parametrize("n,s,k", [(100, 1, 4), (100, 2, 8), (50, 3, 5)])
def test_interval_mass_is_s_over_n(n, s, k):
    ts = digital_thresholds(n, s, k)
    cc = GAIN_LAW.ccdf(ts.levels)
    masses = np.append(cc[:-1] - cc[1:], cc[-1])
    np.testing.assert_allclose(masses, s / n, atol=1e-12)


def test_threshold_set_validation():
    with pytest.raises(ValueError):
        ThresholdSet(np.array([2.0, 1.0]))
    with pytest.raises(ValueError):
        ThresholdSet(np.array([0.0, 1.0]))
    ts = ThresholdSet(np.array([1.0, 2.0]))
    assert ts.interval(0) == (1.0, 2.0)
    assert ts.interval(1) == (2.0, np.inf)


def test_expected_contenders():
    assert expected_contenders(100, -math.log(0.05)) == pytest.approx(5.0)
    assert expected_contenders(100, 0.0) == 100.0
    assert expected_contenders(100, math.log(100)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        expected_contenders(100, -0.1)


def test_threshold_roundtrip():
    for s in (1, 2, 5, 10, 15):
        zeta = analog_threshold(100, s)
        assert expected_contenders(100, zeta) == pytest.approx(s, abs=1e-12)


@pytest.mark.parametrize("n,s", [(20, 1), (20, 3), (100, 5)])
def test_contention_probability_maximized_at_s_over_n(n, s):
    # grid search over the per-user contention probability u confirms
    # that u = s/n maximizes C(n,s) u^s (1-u)^(n-s)
    u = np.arange(1e-4, 1.0, 1e-4)
    psi = comb(n, s) * u**s * (1.0 - u) ** (n - s)
    assert abs(u[np.argmax(psi)] - s / n) <= 1e-4 + 1e-12
