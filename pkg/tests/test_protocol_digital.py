import math

import numpy as np
import pytest

from csraloha.config import SystemConfig
from csraloha.protocol_analog import experiment_matrix
from csraloha.protocol_digital import (digital_rates, digital_slot_budget,
                                       empirical_digital_rate,
                                       run_digital_round)
from csraloha.thresholds import digital_thresholds

CFG = SystemConfig(n=100, s=1, k=4, r=14, mode="digital")


def _matrix(cfg):
    return experiment_matrix(cfg, digital_slot_budget(cfg))


def test_slot_budget():
    assert digital_slot_budget(CFG) == 14
    assert digital_slot_budget(CFG.updated(r=None)) == 14  # ceil(2 log2 100)


def test_silent_frame():
    out = run_digital_round(CFG, np.full(100, 0.1), _matrix(CFG),
                            np.random.default_rng(0))
    assert not out.event_b and not out.event_a
    assert out.chosen_interval is None and out.selected_user is None
    assert out.achieved_rate == 0.0
    assert out.slots_used == 4 * 14


def test_single_user_top_interval():
    cfg = CFG.updated(k=1)
    gains = np.full(100, 0.1)
    gains[7] = 5.0
    out = run_digital_round(cfg, gains, _matrix(cfg), np.random.default_rng(0))
    assert out.chosen_interval == 0 and out.selected_user == 7
    assert out.event_a
    assert out.achieved_rate == pytest.approx(math.log2(1 + math.log(100)),
                                              abs=1e-4)
    assert out.achieved_rate == pytest.approx(2.4868, abs=1e-4)


def test_uniform_selection_between_two_detected():
    matrix = _matrix(CFG)
    ts = digital_thresholds(100, 1, 4)
    gains = np.full(100, 0.1)
    gains[[10, 20]] = ts.levels[-1] + 0.5  # both in the top interval
    counts = {10: 0, 20: 0}
    rng = np.random.default_rng(42)
    for _ in range(10000):
        out = run_digital_round(CFG, gains, matrix, rng)
        counts[out.selected_user] += 1
    assert abs(counts[10] / 10000 - 0.5) < 0.015


def test_empty_interval_never_detected():
    matrix = _matrix(CFG)
    rng = np.random.default_rng(5)
    ts = digital_thresholds(100, 1, 4)
    for _ in range(100):
        gains = -np.log1p(-rng.random(100))
        out = run_digital_round(CFG, gains, matrix, rng)
        for j in out.detected_intervals:
            lo, hi = ts.interval(j)
            assert np.any((gains >= lo) & (gains < hi))


def test_event_b_frequency():
    frames = 20000
    rates, chosen = digital_rates(CFG, frames=frames, ideal_cs=True,
                                  return_chosen=True)
    p_b = float(np.mean(chosen >= 0))
    expect = 1.0 - (1.0 - 4 / 100) ** 100
    assert abs(p_b - expect) < 3.0 * math.sqrt(expect * (1 - expect) / frames)


def test_interval_occupancy_mean():
    rng = np.random.default_rng(11)
    ts = digital_thresholds(100, 1, 4)
    frames = 5000
    counts = np.zeros(4)
    for _ in range(frames):
        gains = -np.log1p(-rng.random(100))
        for j in range(4):
            lo, hi = ts.interval(j)
            counts[j] += np.sum((gains >= lo) & (gains < hi))
    means = counts / frames
    se = math.sqrt(1.0 * (1 - 0.01) / frames)  # Binomial(100, 0.01) std ~ 1
    assert np.all(np.abs(means - 1.0) < 3.0 * se)


def test_more_thresholds_help_at_large_r():
    cfg1 = CFG.updated(k=1, r=20, frames=20000)
    cfg4 = CFG.updated(k=4, r=20, frames=20000)
    m1, se1 = empirical_digital_rate(cfg1)
    m4, se4 = empirical_digital_rate(cfg4)
    assert m4 >= m1 + 3.0 * math.hypot(se1, se4)


def test_rates_deterministic_across_threads():
    a = digital_rates(CFG, frames=10000, threads=1)
    b = digital_rates(CFG, frames=10000, threads=4)
    np.testing.assert_array_equal(a, b)


def test_rate_is_interval_floor():
    ts = digital_thresholds(100, 1, 4)
    frames = 3000
    rates, chosen = digital_rates(CFG, frames=frames, ideal_cs=True,
                                  return_chosen=True)
    for j in range(4):
        mask = (chosen == j) & (rates > 0)
        if mask.any():
            np.testing.assert_allclose(rates[mask],
                                       math.log2(1 + ts.levels[j]))
