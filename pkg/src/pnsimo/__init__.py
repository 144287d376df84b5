"""Maximum-likelihood detection for SIMO links with receiver phase noise.

Modules
-------
special      log-domain modified Bessel functions and ratios
phase_noise  Fourier-coefficient phase-noise models and samplers
channel      scenario description and observation simulator
detectors    optimal two-slot, closed-form, high-SNR and T-slot detectors
analysis     SER floor and pairwise error bounds
oracle       quadrature likelihoods used for validation
harness      Monte Carlo sweeps and CSV output (``pnsimo`` CLI)
"""

from ._accel import backend
from .analysis import (
    FloorReport,
    bernstein_pairwise_bound,
    chebyshev_pairwise_bound_fc_ns,
    ser_floor_sync,
    union_bound,
)
from .channel import Observation, Scenario, psk, simulate_t_slot, simulate_two_slot, substream
from .detectors import (
    DecisionResult,
    TruncationPolicy,
    detect_fc_von_mises,
    detect_high_snr_ns,
    detect_min_distance_fc_ns,
    detect_tslot_df_ns,
    detect_tslot_genie_s,
    detect_two_slot,
    log_truncated_series,
)
from .phase_noise import (
    PhaseNoiseModel,
    convolve_iid,
    fourier_uniform,
    fourier_von_mises,
    fourier_wrapped_gaussian,
    pdf_eval,
    sample_phase,
)
from .special import bessel_ratio, log_bessel_i, log_gamma, ratio_lower_bound

__version__ = "0.1.0"
