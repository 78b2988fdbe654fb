"""Analog reservation round: threshold, contend, measure, recover, select."""

from dataclasses import dataclass

import numpy as np

from . import _kernels, montecarlo, seeds
from .config import SystemConfig
from .recovery import (REL_TOL, ABS_TOL_FLOOR, default_tol, greedy_recover,
                       ls_refine, max_correlation_support)
from .analytics import reservation_slots_analog
from .sensing import generate_bernoulli_matrix, measure, build_vector_analog
from .thresholds import analog_threshold

# greedy decoder headroom over the target sparsity: the actual contender
# count is Binomial(n, s/n), so allow up to 4s picks
GREEDY_SPARSITY_HEADROOM = 4


@dataclass(frozen=True)
class AnalogRoundOutcome:
    contenders: np.ndarray
    event_b: bool
    event_a: bool
    selected_user: int | None
    achieved_rate: float
    slots_used: int
    best_found: bool  # diagnostic: selected user is the true best contender


def analog_slot_budget(config: SystemConfig) -> int:
    return config.r if config.r is not None else reservation_slots_analog(
        config.c, config.s, config.n)


def experiment_matrix(config: SystemConfig, r: int) -> np.ndarray:
    """Per-experiment signature matrix derived from the master seed."""
    rng = np.random.Generator(np.random.PCG64(
        int(seeds.stream(config.master_seed, seeds.DOMAIN_MATRIX))))
    return generate_bernoulli_matrix(r, config.n, rng)


def _detect(coef: np.ndarray, support: np.ndarray) -> np.ndarray:
    """Drop numerically-zero LS coefficients (silent-user columns)."""
    if coef.size == 0:
        return support
    keep = np.abs(coef) > 1e-8 * np.abs(coef).max()
    return support[keep]


def run_analog_round(config: SystemConfig, gains: np.ndarray,
                     matrix: np.ndarray, ideal_cs: bool = False) -> AnalogRoundOutcome:
    zeta = analog_threshold(config.n, config.s)
    v, true_support = build_vector_analog(gains, zeta)
    event_b = true_support.size > 0
    r = matrix.shape[0]
    if ideal_cs:
        detected = true_support
        values = gains[detected]
    elif config.decoder == "greedy":
        res = greedy_recover(measure(matrix, v), matrix,
                             s_max=GREEDY_SPARSITY_HEADROOM * config.s)
        detected = _detect(res.values, res.support)
        values = res.values[np.isin(res.support, detected)]
    else:
        y = measure(matrix, v)
        support = max_correlation_support(y, matrix, config.s)
        try:
            coef = ls_refine(y, matrix, support)
        except np.linalg.LinAlgError:
            coef, support = np.empty(0), np.empty(0, np.int64)
        detected = _detect(coef, support)
        values = coef[np.isin(support, detected)]
    event_a = detected.size == true_support.size and np.array_equal(
        np.sort(detected), true_support)
    selected = None
    rate = 0.0
    best = False
    if event_b and detected.size > 0:
        selected = int(detected[np.argmax(values)])
        best = gains[selected] == gains[true_support].max()
        if event_a:
            rate = float(np.log2(1.0 + gains[selected]))
    return AnalogRoundOutcome(true_support, event_b, event_a, selected,
                              rate, r, best)


def analog_rates(config: SystemConfig, frames: int | None = None,
                 master_seed: int | None = None, ideal_cs: bool = False,
                 threads: int | None = None) -> np.ndarray:
    """Per-frame achieved rates (zeros for silent or failed frames)."""
    frames = config.frames if frames is None else frames
    seed = config.master_seed if master_seed is None else master_seed
    threads = config.threads if threads is None else threads
    r = analog_slot_budget(config)
    zeta = analog_threshold(config.n, config.s)
    cfg = config.updated(master_seed=seed)
    if config.regenerate_matrix_per_frame and not ideal_cs:
        def worker(lo, hi):
            gains = seeds.gains_block(seed, config.n, lo, hi)
            rng = np.random.Generator(np.random.PCG64(
                int(seeds.stream(seed, seeds.DOMAIN_MATRIX))))
            out = np.empty(hi - lo)
            for i in range(hi - lo):
                m = generate_bernoulli_matrix(r, config.n, rng)
                out[i] = run_analog_round(cfg, gains[i], m).achieved_rate
            return out
        return montecarlo.run_chunked(frames, 1, worker)

    matrix = experiment_matrix(cfg, r)
    at = np.ascontiguousarray(matrix.T)
    use_greedy = config.decoder == "greedy"

    def worker(lo, hi):
        gains = seeds.gains_block(seed, config.n, lo, hi)
        rates, _, _ = _kernels.analog_batch(
            gains, at, zeta, use_greedy, config.s,
            GREEDY_SPARSITY_HEADROOM * config.s, REL_TOL, ABS_TOL_FLOOR,
            ideal_cs)
        return rates

    return montecarlo.run_chunked(frames, threads, worker)


def empirical_analog_rate(config: SystemConfig, frames: int | None = None,
                          master_seed: int | None = None, ideal_cs: bool = False,
                          threads: int | None = None) -> tuple[float, float]:
    """Mean achieved rate with standard error; deterministic given the seed."""
    return montecarlo.mean_stderr(
        analog_rates(config, frames, master_seed, ideal_cs, threads))
