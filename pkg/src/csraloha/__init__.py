"""Opportunistic reservation for R-ALOHA via compressed-sensing contention.

Simulation and closed-form analysis of a multiuser-diversity reservation
protocol: users whose channel gain clears a threshold transmit signature
sequences simultaneously, the access point recovers the contender set by
sparse recovery, and throughput is compared against an interval-splitting
baseline under a shared timing model.
"""

from .analytics import (NumericalFailure, ThroughputReport, TimingModel,
                        analog_asymptotic_bound, analog_rate_closed_form,
                        break_even_beta, centralized_optimum,
                        digital_rate_closed_form, qin_berry_rate_quantized,
                        reservation_slots_analog, reservation_slots_digital,
                        selected_rate_true_max, total_throughput)
from .backend import BACKEND, USING_NUMBA
from .channel import GainDistribution, conditional_max_pdf, sample_gains
from .config import ConfigError, SystemConfig, load_config
from .harness import (SweepRow, compare_schemes, rows_to_csv, run_experiment,
                      sweep_figure)
from .protocol_analog import (AnalogRoundOutcome, empirical_analog_rate,
                              run_analog_round)
from .protocol_digital import (DigitalRoundOutcome, empirical_digital_rate,
                               run_digital_round)
from .recovery import (RecoveryResult, brute_force_l0, greedy_recover,
                       ls_refine, max_correlation_support)
from .sensing import ContentionInstance, generate_bernoulli_matrix, measure
from .splitting import SplittingOutcome, mean_beta, run_splitting
from .thresholds import ThresholdSet, analog_threshold, digital_thresholds

__version__ = "1.0.0"
