import math

import numpy as np
import pytest

from csraloha.analytics import TimingModel, splitting_reservation_seconds
from csraloha.config import SystemConfig
from csraloha.splitting import (mean_beta, run_splitting, splitting_trials)

CFG = SystemConfig(n=100)


def test_single_user_resolves_immediately():
    out = run_splitting(CFG.updated(n=2), np.array([0.3]))
    assert out.resolved and out.beta == 1 and out.selected_user == 0


def test_resolved_trials_select_argmax():
    rng = np.random.default_rng(4)
    for _ in range(300):
        gains = -np.log1p(-rng.random(100))
        out = run_splitting(CFG, gains)
        if out.resolved:
            assert out.selected_user == int(np.argmax(gains))
            assert out.achieved_rate == pytest.approx(
                math.log2(1.0 + gains.max()))


def test_mean_beta_near_paper_value():
    mean, se = mean_beta(100, 20000, master_seed=77)
    assert 2.2 < mean < 2.8


def test_beta_one_probability():
    # beta = 1 iff exactly one user starts above the initial cutoff
    # ln(n), which has probability n * (1/n) * (1 - 1/n)^(n-1)
    n, trials = 100, 50000
    betas, resolved, _ = splitting_trials(n, trials, master_seed=3)
    p1 = float(np.mean(betas == 1))
    expect = (1.0 - 1.0 / n) ** (n - 1)
    assert abs(p1 - expect) < 3.0 * math.sqrt(expect * (1 - expect) / trials)


def test_trials_deterministic_across_threads():
    a = splitting_trials(100, 10000, master_seed=5, threads=1)[0]
    b = splitting_trials(100, 10000, master_seed=5, threads=4)[0]
    np.testing.assert_array_equal(a, b)


def test_reservation_seconds():
    tm = TimingModel.from_seconds(1e-9, 30e-6, 3.3334e-6)  # t = 3334
    assert splitting_reservation_seconds(2.5, tm, "analog") == pytest.approx(
        8340e-9)
    assert splitting_reservation_seconds(1.0, tm, "analog") == pytest.approx(
        3336e-9)
    tm8 = TimingModel.from_seconds(1e-8, 30e-6, 3.3334e-6)  # t = 334
    assert splitting_reservation_seconds(
        2.5, tm8, "digital", q=8, n=100) == pytest.approx(872.5e-8)
    with pytest.raises(ValueError):
        splitting_reservation_seconds(0.5, tm, "analog")
    with pytest.raises(ValueError):
        splitting_reservation_seconds(2.5, tm, "nonsense")


def test_run_splitting_validates_input():
    with pytest.raises(ValueError):
        run_splitting(CFG, np.empty(0))
    with pytest.raises(ValueError):
        run_splitting(CFG, np.zeros((2, 2)))
