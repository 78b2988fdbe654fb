"""Contention thresholds mapping a target sparsity to gain cutoffs."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ThresholdSet:
    """Ascending thresholds zeta_1 < ... < zeta_k; zeta_{k+1} is +inf."""

    levels: np.ndarray

    def __post_init__(self):
        lv = np.asarray(self.levels, dtype=float)
        if lv.ndim != 1 or lv.size < 1:
            raise ValueError("levels must be a non-empty 1-d vector")
        if not np.all(np.isfinite(lv)) or np.any(lv <= 0.0):
            raise ValueError("levels must be finite and positive")
        if np.any(np.diff(lv) <= 0.0):
            raise ValueError("levels must be strictly increasing")
        object.__setattr__(self, "levels", lv)

    @property
    def k(self) -> int:
        return self.levels.size

    def interval(self, j: int) -> tuple[float, float]:
        """Half-open interval [zeta_j, zeta_{j+1}) for 0-based j."""
        hi = self.levels[j + 1] if j + 1 < self.k else np.inf
        return float(self.levels[j]), float(hi)


def analog_threshold(n: int, s: int) -> float:
    """Threshold with P[h > zeta] = s/n, i.e. zeta = -log(s/n)."""
    if not 1 <= s < n:
        raise ValueError("need 1 <= s < n (s = n gives a zero threshold)")
    return -np.log(s / n)


def digital_thresholds(n: int, s: int, k: int) -> ThresholdSet:
    """k thresholds giving every interval probability mass s/n.

    zeta_j = -log(s * (k - j + 1) / n) for j = 1..k.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if not 1 <= s * k < n:
        raise ValueError("need 1 <= s*k < n")
    j = np.arange(1, k + 1)
    return ThresholdSet(-np.log(s * (k - j + 1) / n))


def expected_contenders(n: int, zeta: float) -> float:
    """Mean number of users whose gain exceeds zeta: n * exp(-zeta)."""
    if zeta < 0.0:
        raise ValueError("zeta must be non-negative")
    return n * np.exp(-zeta)
