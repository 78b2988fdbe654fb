"""Opportunistic splitting baseline (Qin & Berry style collision resolution)."""

from dataclasses import dataclass

import numpy as np

from . import _kernels, montecarlo, seeds
from .config import SystemConfig

# P(beta > 64) is astronomically small for any n of interest; trials that
# somehow exhaust the budget are reported unresolved with rate 0
DEFAULT_SLOT_BUDGET = 64

PAPER_MEAN_BETA = 2.5


@dataclass(frozen=True)
class SplittingOutcome:
    beta: int
    selected_user: int | None
    achieved_rate: float
    resolved: bool


def run_splitting(config: SystemConfig, gains: np.ndarray,
                  budget: int = DEFAULT_SLOT_BUDGET) -> SplittingOutcome:
    """Slot-by-slot interval splitting until one user transmits alone."""
    if gains.ndim != 1 or gains.size < 1:
        raise ValueError("need a 1-d gain vector with at least one user")
    beta, resolved, selected = _kernels.splitting_batch(
        np.ascontiguousarray(gains[None, :]), budget)
    if not resolved[0]:
        return SplittingOutcome(int(beta[0]), None, 0.0, False)
    sel = int(selected[0])
    return SplittingOutcome(int(beta[0]), sel,
                            float(np.log2(1.0 + gains[sel])), True)


def splitting_trials(n: int, trials: int, master_seed: int,
                     budget: int = DEFAULT_SLOT_BUDGET, threads: int = 1):
    """Batch of independent splitting trials.

    Returns (beta, resolved, selected) arrays; gains use the same
    counter-based per-frame seeding as the protocol simulations.
    """
    betas = np.empty(trials, np.int64)
    resolved = np.empty(trials, np.uint8)
    selected = np.empty(trials, np.int64)

    def worker(lo, hi):
        gains = seeds.gains_block(master_seed ^ seeds.DOMAIN_SPLIT, n, lo, hi)
        b, res, sel = _kernels.splitting_batch(gains, budget)
        betas[lo:hi] = b
        resolved[lo:hi] = res
        selected[lo:hi] = sel
        return b.astype(float)

    montecarlo.run_chunked(trials, threads, worker)
    return betas, resolved, selected


def mean_beta(n: int, trials: int, master_seed: int,
              budget: int = DEFAULT_SLOT_BUDGET) -> tuple[float, float]:
    """Simulated mean slot count with standard error."""
    betas, _, _ = splitting_trials(n, trials, master_seed, budget)
    return montecarlo.mean_stderr(betas.astype(float))
