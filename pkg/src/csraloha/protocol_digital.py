"""Digital reservation round: per-interval 1-bit contention and detection."""

from dataclasses import dataclass

import numpy as np

from . import _kernels, montecarlo, seeds
from .config import SystemConfig
from .recovery import REL_TOL, ABS_TOL_FLOOR, greedy_recover
from .analytics import reservation_slots_digital
from .protocol_analog import experiment_matrix, _detect, GREEDY_SPARSITY_HEADROOM
from .sensing import build_vector_digital, measure
from .thresholds import digital_thresholds


@dataclass(frozen=True)
class DigitalRoundOutcome:
    active_intervals: frozenset
    detected_intervals: frozenset
    chosen_interval: int | None
    selected_user: int | None
    achieved_rate: float
    slots_used: int
    event_a: bool
    event_b: bool


def digital_slot_budget(config: SystemConfig) -> int:
    """Slots per threshold interval (the paper sweeps this directly)."""
    return config.r if config.r is not None else reservation_slots_digital(
        config.c, config.n)


def run_digital_round(config: SystemConfig, gains: np.ndarray,
                      matrix: np.ndarray, rng: np.random.Generator,
                      ideal_cs: bool = False) -> DigitalRoundOutcome:
    ts = digital_thresholds(config.n, config.s, config.k)
    r = matrix.shape[0]
    event_b = bool(np.any(gains >= ts.levels[0]))
    active = set()
    detected_by_interval = {}
    for j in range(ts.k):
        lo, hi = ts.interval(j)
        v, occupants = build_vector_digital(gains, lo, hi)
        if occupants.size:
            active.add(j)
        if ideal_cs:
            detected = occupants
        elif occupants.size == 0:
            detected = occupants  # y = 0: zero residual, nothing detected
        else:
            res = greedy_recover(measure(matrix, v), matrix,
                                 s_max=GREEDY_SPARSITY_HEADROOM * config.s)
            detected = _detect(res.values, res.support)
        if detected.size:
            detected_by_interval[j] = detected
    chosen = max(detected_by_interval) if detected_by_interval else None
    selected = None
    rate = 0.0
    event_a = False
    if chosen is not None:
        det = detected_by_interval[chosen]
        selected = int(det[min(int(rng.random() * det.size), det.size - 1)])
        lo, hi = ts.interval(chosen)
        event_a = bool(lo <= gains[selected] < hi)
        if event_a:
            rate = float(np.log2(1.0 + lo))
    return DigitalRoundOutcome(frozenset(active),
                               frozenset(detected_by_interval), chosen,
                               selected, rate, ts.k * r, event_a, event_b)


def digital_rates(config: SystemConfig, frames: int | None = None,
                  master_seed: int | None = None, ideal_cs: bool = False,
                  threads: int | None = None,
                  return_chosen: bool = False):
    """Per-frame achieved rates (and optionally the chosen intervals)."""
    frames = config.frames if frames is None else frames
    seed = config.master_seed if master_seed is None else master_seed
    threads = config.threads if threads is None else threads
    r = digital_slot_budget(config)
    levels = digital_thresholds(config.n, config.s, config.k).levels
    matrix = experiment_matrix(config.updated(master_seed=seed), r)
    at = np.ascontiguousarray(matrix.T)
    chosen_out = np.full(frames, -1, np.int64)

    def worker(lo, hi):
        gains = seeds.gains_block(seed, config.n, lo, hi)
        u_sel = seeds.selection_block(seed, lo, hi)
        rates, _, _, chosen = _kernels.digital_batch(
            gains, at, levels, GREEDY_SPARSITY_HEADROOM * config.s,
            REL_TOL, ABS_TOL_FLOOR, u_sel, ideal_cs)
        chosen_out[lo:hi] = chosen
        return rates

    rates = montecarlo.run_chunked(frames, threads, worker)
    return (rates, chosen_out) if return_chosen else rates


def empirical_digital_rate(config: SystemConfig, frames: int | None = None,
                           master_seed: int | None = None, ideal_cs: bool = False,
                           threads: int | None = None) -> tuple[float, float]:
    """Mean achieved rate with standard error; deterministic given the seed."""
    return montecarlo.mean_stderr(
        digital_rates(config, frames, master_seed, ideal_cs, threads))
