"""Closed-form throughput, reservation-time, and break-even expressions."""

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import quad

from .thresholds import analog_threshold, digital_thresholds

# Slot-budget conventions: the analog budget r = ceil(c * s * log(n/s))
# uses the natural log (information-theoretic measurement count); the
# digital per-threshold budget r = ceil(c * log2(n)) is explicitly base 2.
ANALOG_BUDGET_LOG = math.log
DIGITAL_BUDGET_LOG = math.log2

_QUAD_TAIL = 60.0  # integrand decays as exp(-x); tail beyond is < 1e-24
_QUAD_ABS_TOL = 1e-9


class NumericalFailure(RuntimeError):
    """Raised when adaptive quadrature fails to converge."""


@dataclass(frozen=True)
class TimingModel:
    """Slot/frame bookkeeping: t RTT slots, p slots per frame, m reserved."""

    slot_seconds: float
    coherence_seconds: float
    rtt_seconds: float
    t: int
    p: int
    m: int = 0

    @classmethod
    def from_seconds(cls, slot_seconds, coherence_seconds, rtt_seconds):
        if min(slot_seconds, coherence_seconds, rtt_seconds) <= 0.0:
            raise ValueError("durations must be positive")
        return cls(slot_seconds, coherence_seconds, rtt_seconds,
                   t=_ceil_snap(rtt_seconds / slot_seconds),
                   p=_floor_snap(coherence_seconds / slot_seconds))

    def with_reservation(self, m: int) -> "TimingModel":
        return replace(self, m=int(m))

    @property
    def infeasible(self) -> bool:
        return self.m > self.p

    @property
    def reservation_seconds(self) -> float:
        return self.m * self.slot_seconds

    @property
    def data_seconds(self) -> float:
        return max(self.p - self.m, 0) * self.slot_seconds

    @property
    def efficiency(self) -> float:
        return 0.0 if self.infeasible else 1.0 - self.m / self.p


@dataclass(frozen=True)
class ThroughputReport:
    rate: float
    efficiency: float
    throughput: float
    components: dict = field(default_factory=dict)


def _ceil_snap(x: float) -> int:
    # a partial slot still blocks the frame, but do not let 3334.0000001
    # from float division become 3335
    r = round(x)
    return r if abs(x - r) < 1e-9 * max(1.0, abs(x)) else math.ceil(x)


def _floor_snap(x: float) -> int:
    r = round(x)
    return r if abs(x - r) < 1e-9 * max(1.0, abs(x)) else math.floor(x)


def _quad(f, lo, hi):
    val, err = quad(f, lo, hi, epsabs=_QUAD_ABS_TOL, epsrel=1e-10, limit=400)
    if not math.isfinite(val) or err > 1e-6 * max(1.0, abs(val)):
        raise NumericalFailure(f"quadrature error estimate {err} on [{lo}, {hi}]")
    return val


def analog_conditional_mean(n: int, s: int) -> float:
    """E[log2(1 + max gain) | non-empty contention] for the fixed-s model.

    Adaptive quadrature of log2(1+x) against the conditional max density
    s*exp(-x)*(s/n - exp(-x))**(s-1)/(s/n)**s over [zeta, zeta + 60].
    """
    zeta = analog_threshold(n, s)
    q = s / n
    pref = n**s / s ** (s - 1)

    def integrand(x):
        base = max(q - math.exp(-x), 0.0)
        return math.log2(1.0 + x) * math.exp(-x) * base ** (s - 1)

    return pref * _quad(integrand, zeta, zeta + _QUAD_TAIL)


def analog_conditional_mean_laguerre(n: int, s: int, order: int = 64) -> float:
    """Gauss-Laguerre cross-check of `analog_conditional_mean`.

    After u = x - zeta the integral becomes
    s * int_0^inf exp(-u) (1 - exp(-u))**(s-1) log2(1 + zeta + u) du.
    """
    zeta = analog_threshold(n, s)
    nodes, weights = np.polynomial.laguerre.laggauss(order)
    vals = (1.0 - np.exp(-nodes)) ** (s - 1) * np.log2(1.0 + zeta + nodes)
    return s * float(weights @ vals)


def analog_rate_closed_form(n: int, s: int) -> ThroughputReport:
    """Analog contention rate: P(B) times the conditional-mean integral."""
    p_silent = (1.0 - s / n) ** n
    mean = analog_conditional_mean(n, s)
    rate = (1.0 - p_silent) * mean
    return ThroughputReport(rate, 1.0, rate, components={
        "p_silent": p_silent,
        "p_contention": 1.0 - p_silent,
        "conditional_mean": mean,
        "zeta": analog_threshold(n, s),
    })


def selected_rate_true_max(n: int, zeta: float = 0.0) -> float:
    """E[log2(1 + max of n gains) * 1{max > zeta}] by quadrature.

    With zeta = 0 this is the zero-reservation maximum rate (and the rate
    of a genie scheduler that always finds the true best user).
    """
    def integrand(x):
        return math.log2(1.0 + x) * n * math.exp(-x) * (-math.expm1(-x)) ** (n - 1)

    return _quad(integrand, zeta, max(zeta, math.log(n)) + _QUAD_TAIL)


def centralized_optimum(n: int) -> float:
    """log2(1 + log n), the centralized scheduling rate scale."""
    if n < 2:
        raise ValueError("need n >= 2")
    return math.log2(1.0 + math.log(n))


def analog_asymptotic_bound(n: int) -> float:
    """Lower bound log2(1 + log n - log log n) * (1 - 1/n) at s = log n."""
    if n < 3:
        raise ValueError("need n >= 3")
    return math.log2(1.0 + math.log(n) - math.log(math.log(n))) * (1.0 - 1.0 / n)


def digital_rate_closed_form(n: int, s: int, k: int,
                             as_printed: bool = True) -> ThroughputReport:
    """Digital contention rate from the per-interval telescoping sum.

    The per-interval weights are [F(z_{i+1})]^n - [F(z_i)]^n with
    F(z_{k+1}) = 1.  `as_printed=True` additionally multiplies the sum by
    (1 - [F(z_1)]^n); the alternative reading omits that factor (the sum
    already telescopes to the non-silent probability).  Simulation
    arbitrates between the two; see the experiment harness.
    """
    ts = digital_thresholds(n, s, k)
    # interval masses are exact rationals: F(zeta_j) = 1 - s*(k-j+1)/n
    f = np.array([1.0 - s * (k - j + 1) / n for j in range(1, k + 1)] + [1.0])
    fn = f**n
    weights = fn[1:] - fn[:-1]
    terms = np.log2(1.0 + ts.levels) * weights
    total = float(terms.sum())
    p_contention = 1.0 - fn[0]
    rate = total * p_contention if as_printed else total
    return ThroughputReport(rate, 1.0, rate, components={
        "levels": ts.levels,
        "interval_pick_probability": weights,
        "selection_probability_per_interval": weights / (f[1:] - f[:-1]),
        "per_interval_terms": terms,
        "p_contention": p_contention,
        "sum": total,
    })


def qin_berry_rate_quantized(n: int, q: int) -> float:
    """Genie-scheduler rate when the reported CQI is floor-quantized to q bits.

    Levels are the equal-probability cutoffs l_i = -log(1 - i/2^q); the
    credited rate for a gain in cell i is log2(1 + l_i).
    """
    if q < 1:
        raise ValueError("need q >= 1")
    cells = 2**q
    i = np.arange(cells)
    levels = -np.log1p(-i / cells)
    f = np.concatenate([i / cells, [1.0]])
    fn = f ** n
    return float(np.sum(np.log2(1.0 + levels) * (fn[1:] - fn[:-1])))


def reservation_slots_analog(c: float, s: int, n: int) -> int:
    """Analog slot budget r = ceil(c * s * log(n/s)), floored at 1."""
    if c <= 0.0 or not 1 <= s < n:
        raise ValueError("need c > 0 and 1 <= s < n")
    return max(1, math.ceil(c * s * ANALOG_BUDGET_LOG(n / s)))


def reservation_slots_digital(c: float, n: int) -> int:
    """Digital per-threshold budget r = ceil(c * log2(n)), floored at 1."""
    if c <= 0.0 or n < 2:
        raise ValueError("need c > 0 and n >= 2")
    return max(1, math.ceil(c * DIGITAL_BUDGET_LOG(n)))


def reservation_time_analog(r: int, timing: TimingModel) -> TimingModel:
    """Analog reservation occupies m = r + t slots (CS slots plus RTT)."""
    if r < 1:
        raise ValueError("need r >= 1")
    return timing.with_reservation(r + timing.t)


def reservation_time_digital(r: int, k: int, timing: TimingModel) -> TimingModel:
    """Digital reservation occupies m = k*r + t slots."""
    if r < 1 or k < 1:
        raise ValueError("need r >= 1 and k >= 1")
    return timing.with_reservation(k * r + timing.t)


def splitting_reservation_seconds(beta: float, timing: TimingModel,
                                  mode: str, q: int = 8, n: int = 100) -> float:
    """Qin-Berry reservation time: beta slots, each slot RTT + payload.

    Analog payload is two real numbers (ID + CQI); digital payload is
    q + ceil(log2 n) bits.
    """
    if beta < 1:
        raise ValueError("need beta >= 1")
    if mode == "analog":
        return beta * (timing.t + 2) * timing.slot_seconds
    if mode == "digital":
        return beta * (timing.t + q + math.ceil(math.log2(n))) * timing.slot_seconds
    raise ValueError(f"unknown mode {mode!r}")


def splitting_reservation_slots(beta: float, timing: TimingModel,
                                mode: str, q: int = 8, n: int = 100) -> float:
    return splitting_reservation_seconds(beta, timing, mode, q, n) / timing.slot_seconds


def break_even_beta(mode: str, *, t: int, r: int, k: int = 1,
                    q: int = 8, n: int = 100):
    """Splitting slot count above which the CS scheme wins.

    Returns None (always-better marker) when the CS reservation is shorter
    than a single splitting slot: analog r < 2, digital k*r < q + log2(n).
    """
    if mode == "analog":
        if r < 2:
            return None
        return (t + r) / (t + 2)
    if mode == "digital":
        if k * r < q + math.log2(n):
            return None
        return (t + k * r) / (t + q + math.log2(n))
    raise ValueError(f"unknown mode {mode!r}")


def total_throughput(rate: float, timing: TimingModel) -> ThroughputReport:
    """C = (1 - m/p) * rate; zero for infeasible frame geometry."""
    if rate < 0.0:
        raise ValueError("rate must be non-negative")
    eff = timing.efficiency
    return ThroughputReport(rate, eff, eff * rate, components={
        "m": timing.m, "p": timing.p, "infeasible": timing.infeasible,
    })
