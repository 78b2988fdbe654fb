"""Experiment driver: single runs, scheme comparison, figure sweeps, CSV."""

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import analytics
from .analytics import TimingModel, ThroughputReport
from .config import SystemConfig, ConfigError
from .protocol_analog import analog_slot_budget, empirical_analog_rate
from .protocol_digital import digital_slot_budget, empirical_digital_rate
from .splitting import PAPER_MEAN_BETA, mean_beta

CSV_SCHEMA = "csraloha-sweep-v1"
CSV_COLUMNS = ["scheme", "figure", "sweep_var", "sweep_value", "n", "s", "k",
               "c", "q", "slot_seconds", "r", "m", "p", "efficiency",
               "rate_mean", "rate_stderr", "throughput", "infeasible"]

# default figure grids (config-overridable); figures 3-5 are analog sweeps
# over the slot-budget constant c at slot durations 1e-9/1e-8/1e-7 s,
# figures 6-8 are digital sweeps over slots-per-interval r at the same
# slot durations
ANALOG_C_GRID = tuple(0.25 * i for i in range(2, 17))  # 0.5 .. 4.0
ANALOG_S_VALUES = (1, 2, 5, 10, 15)
DIGITAL_R_GRID = tuple(range(1, 21))
DIGITAL_K_VALUES = (1, 2, 4, 8)
BASELINE_Q_VALUES = (4, 8, 16)
FIGURE_SLOT_SECONDS = {3: 1e-9, 4: 1e-8, 5: 1e-7, 6: 1e-9, 7: 1e-8, 8: 1e-7}
ANALOG_FIGURES = (3, 4, 5)
DIGITAL_FIGURES = (6, 7, 8)


@dataclass(frozen=True)
class SweepRow:
    scheme: str
    figure: int | str
    sweep_var: str
    sweep_value: float | str
    n: int
    s: int
    k: int
    c: float
    q: int
    slot_seconds: float
    r: int
    m: float
    p: int
    efficiency: float
    rate_mean: float
    rate_stderr: float
    throughput: float
    infeasible: int

    def values(self):
        return [getattr(self, col) for col in CSV_COLUMNS]


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def _timing(config: SystemConfig) -> TimingModel:
    return TimingModel.from_seconds(config.slot_seconds,
                                    config.coherence_seconds,
                                    config.rtt_seconds)


def _beta(config: SystemConfig) -> tuple[float, float]:
    """Splitting slot count per beta_mode: (mean, stderr)."""
    if config.beta_mode == "fixed-2.5":
        return PAPER_MEAN_BETA, 0.0
    return mean_beta(config.n, config.frames, config.master_seed)


def run_experiment(config: SystemConfig, figure: int | str = "",
                   sweep_var: str = "", sweep_value: float | str = ""
                   ) -> tuple[ThroughputReport, SweepRow]:
    """Monte Carlo run of the configured scheme plus timing composition.

    Infeasible geometry (reservation at least as long as the coherence
    window) is flagged with throughput 0 and the simulation skipped.
    """
    tm = _timing(config)
    if config.mode == "analog":
        r = analog_slot_budget(config)
        tm = tm.with_reservation(r + tm.t)
    else:
        r = digital_slot_budget(config)
        tm = tm.with_reservation(config.k * r + tm.t)
    if tm.infeasible:
        rate, stderr = 0.0, 0.0
    elif config.mode == "analog":
        rate, stderr = empirical_analog_rate(config)
    else:
        rate, stderr = empirical_digital_rate(config)
    eff = max(tm.efficiency, 0.0)
    report = ThroughputReport(rate=rate, efficiency=eff,
                              throughput=eff * rate,
                              components={"r": r, "m": tm.m, "p": tm.p,
                                          "stderr": stderr})
    row = SweepRow(f"cs-{config.mode}", figure, sweep_var, sweep_value,
                   config.n, config.s, config.k, config.c, config.q,
                   config.slot_seconds, r, float(tm.m), tm.p, eff, rate,
                   stderr, report.throughput, int(tm.infeasible))
    return report, row


def splitting_row(config: SystemConfig, figure: int | str = "",
                  sweep_var: str = "", sweep_value: float | str = ""
                  ) -> SweepRow:
    """Flat baseline line: splitting reservation + its achievable rate.

    The analog baseline feeds back the selected gain unquantized; the
    digital baseline quantizes it to `q` bits, which caps its rate.
    """
    tm = _timing(config)
    beta, beta_se = _beta(config)
    if config.mode == "analog":
        m = beta * (tm.t + 2)
        rate = analytics.selected_rate_true_max(config.n)
    else:
        m = beta * (tm.t + config.q + math.ceil(math.log2(config.n)))
        rate = analytics.qin_berry_rate_quantized(config.n, config.q)
    infeasible = m >= tm.p
    eff = max(1.0 - m / tm.p, 0.0)
    thr = 0.0 if infeasible else eff * rate
    return SweepRow("splitting", figure, sweep_var, sweep_value, config.n,
                    config.s, config.k, config.c, config.q,
                    config.slot_seconds, 0, float(m), tm.p, eff, rate,
                    0.0 if beta_se == 0.0 else rate * beta_se / beta,
                    thr, int(infeasible))


def zero_reservation_row(config: SystemConfig, figure: int | str = ""
                         ) -> SweepRow:
    """Upper bound: a genie selects the best user with zero overhead."""
    tm = _timing(config)
    rate = analytics.selected_rate_true_max(config.n)
    return SweepRow("zero-reservation", figure, "", "", config.n, config.s,
                    config.k, config.c, config.q, config.slot_seconds, 0,
                    0.0, tm.p, 1.0, rate, 0.0, rate, 0)


def sweep_figure(figure: int, config: SystemConfig,
                 c_grid=ANALOG_C_GRID, s_values=ANALOG_S_VALUES,
                 r_grid=DIGITAL_R_GRID, k_values=DIGITAL_K_VALUES,
                 q_values=BASELINE_Q_VALUES) -> list[SweepRow]:
    """Throughput-vs-budget sweep for one standard figure (3..8).

    Figures 3-5: analog scheme, sweep c for each sparsity level, plus one
    splitting-baseline line and the zero-reservation maximum.  Figures
    6-8: digital scheme, sweep slots-per-interval r for each threshold
    count k, with baseline lines per feedback width q.
    """
    if figure not in FIGURE_SLOT_SECONDS:
        raise ConfigError(f"unknown figure {figure}; expected 3..8")
    base = config.updated(slot_seconds=FIGURE_SLOT_SECONDS[figure],
                          mode="analog" if figure in ANALOG_FIGURES
                          else "digital")
    rows = [zero_reservation_row(base, figure)]
    if figure in ANALOG_FIGURES:
        rows.append(splitting_row(base.updated(s=1, k=1), figure))
        for s in s_values:
            for c in c_grid:
                cfg = base.updated(s=s, k=1, c=float(c), r=None)
                rows.append(run_experiment(cfg, figure, "c", float(c))[1])
    else:
        for q in q_values:
            rows.append(splitting_row(base.updated(q=q), figure))
        for k in k_values:
            for r in r_grid:
                cfg = base.updated(s=1, k=k, r=int(r))
                rows.append(run_experiment(cfg, figure, "r", float(r))[1])
    return rows


def rows_to_csv(rows: list[SweepRow]) -> str:
    """Serialize rows with the fixed versioned header (9 significant digits)."""
    buf = io.StringIO()
    buf.write(f"# schema={CSV_SCHEMA}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_fmt(v) for v in row.values()])
    return buf.getvalue()


def write_manifest(path: str, config: SystemConfig, command: str) -> None:
    """Plain-text echo of the effective configuration next to the CSV."""
    lines = [f"schema={CSV_SCHEMA}", f"command={command}"]
    for field in sorted(vars(config)):
        lines.append(f"{field}={getattr(config, field)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def compare_schemes(config: SystemConfig) -> dict:
    """Reservation time, break-even splitting slot count, and throughputs.

    The verdict says which scheme wins at the baseline's nominal mean of
    2.5 slots; `break_even_beta` of None means the proposed scheme needs
    fewer slots even against a one-slot-resolution baseline.
    """
    tm = _timing(config)
    beta, _ = _beta(config)
    if config.mode == "analog":
        r = analog_slot_budget(config)
        m_cs = r + tm.t
        m_base = beta * (tm.t + 2)
        be = analytics.break_even_beta("analog", t=tm.t, r=r)
    else:
        r = digital_slot_budget(config)
        m_cs = config.k * r + tm.t
        m_base = beta * (tm.t + config.q + math.ceil(math.log2(config.n)))
        be = analytics.break_even_beta("digital", t=tm.t, r=r, k=config.k,
                                       q=config.q, n=config.n)
    report, row = run_experiment(config)
    base = splitting_row(config)
    if be is None:
        verdict = "proposed scheme always reserves faster"
    elif m_cs == m_base:
        verdict = "tie: equal reservation time"
    elif beta > be:
        verdict = f"proposed scheme wins at beta={beta:g}"
    else:
        verdict = f"splitting baseline wins at beta={beta:g}"
    return {
        "mode": config.mode,
        "reservation_slots_cs": m_cs,
        "reservation_seconds_cs": m_cs * config.slot_seconds,
        "reservation_slots_baseline": m_base,
        "reservation_seconds_baseline": m_base * config.slot_seconds,
        "break_even_beta": be,
        "beta": beta,
        "verdict": verdict,
        "throughput_cs": report.throughput,
        "throughput_baseline": base.throughput,
        "rows": [row, base],
    }
