"""Channel gains: unit-mean exponential fading law and order statistics.

The fading label is "Rayleigh" but the quantity simulated is the channel
power gain, whose CCDF is exp(-x); everything downstream (thresholds,
throughput integrals) is expressed in terms of this exponential law.
"""

from dataclasses import dataclass

import numpy as np

ZETA_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class GainDistribution:
    """Unit-mean exponential law of the channel power gain."""

    @staticmethod
    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x < 0.0, 0.0, -np.expm1(-np.maximum(x, 0.0)))

    @staticmethod
    def ccdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x < 0.0, 1.0, np.exp(-np.maximum(x, 0.0)))

    @staticmethod
    def pdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x < 0.0, 0.0, np.exp(-np.maximum(x, 0.0)))

    @staticmethod
    def inv_ccdf(u):
        u = np.asarray(u, dtype=float)
        if np.any(u <= 0.0) or np.any(u > 1.0):
            raise ValueError("inv_ccdf defined for u in (0, 1]")
        return -np.log(u)


GAIN_LAW = GainDistribution()


def sample_gains(n: int, rng: np.random.Generator) -> np.ndarray:
    """n i.i.d. unit-mean exponential gains via the inverse-CDF transform.

    Uses -log1p(-U) with U uniform in [0, 1) so results are reproducible
    across platforms for a given generator state.
    """
    if n < 1:
        raise ValueError("need at least one user")
    return -np.log1p(-rng.random(n))


def conditional_max_pdf(x, s: int, zeta: float, n: int):
    """Density of the max of s gains, each conditioned to lie above zeta.

    Requires zeta = -log(s/n); evaluates
    s * exp(-x) * (s/n - exp(-x))**(s-1) / (s/n)**s  on [zeta, inf),
    0 below.  The base (s/n - exp(-x)) is clamped at 0 near x = zeta to
    avoid negative values from floating-point underflow.
    """
    if not 1 <= s <= n:
        raise ValueError("need 1 <= s <= n")
    if abs(zeta - (-np.log(s / n))) > ZETA_MATCH_TOL:
        raise ValueError("zeta does not match -log(s/n)")
    x = np.asarray(x, dtype=float)
    q = s / n
    base = q - np.exp(-x)
    base = np.where(np.abs(base) < 1e-15, 0.0, base)
    base = np.maximum(base, 0.0)
    val = s * np.exp(-x) * base ** (s - 1) / q**s
    out = np.where(x < zeta, 0.0, val)
    return out if out.ndim else float(out)


def sample_conditional_max(s: int, zeta: float, count: int,
                           rng: np.random.Generator) -> np.ndarray:
    """Draw `count` samples of max of s gains conditioned >= zeta.

    Independent oracle for `conditional_max_pdf`: by memorylessness an
    exponential conditioned above zeta is zeta + Exp(1), so the max is
    zeta + max of s fresh exponentials.
    """
    e = -np.log1p(-rng.random((count, s)))
    return zeta + e.max(axis=1)
