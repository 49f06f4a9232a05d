"""Range-delay accuracy limits of classical (coherent-state) and
entanglement-assisted pulse-compression radars.

The package computes Cramer-Rao bounds, Ziv-Zakai bounds, threshold SNRs,
and quantum-advantage figures as machine-readable curves, plus the
phase-incoherent Monte-Carlo Fisher information of the heterodyne radar
and a physical link-budget front end.
"""

__version__ = "0.1.0"

from .classical import (
    SPEED_OF_LIGHT,
    BoundCurve,
    DelayPrior,
    RadarScenario,
    crb_classical,
    pe_chernoff,
    pe_exact,
    threshold_snr_classical,
    zzb,
    zzb_high_snr_asymptote,
    zzb_low_snr_asymptote,
)
from .errors import (
    DomainError,
    InfeasibleScenarioError,
    NumericsError,
    RadarLimitsError,
    ResolutionError,
    UnsupportedWaveformError,
)
from .incoherent import (
    HeterodyneModel,
    MCConfig,
    MCResult,
    fisher_coherent,
    fisher_incoherent_mc,
    matched_filter_derivative,
    pe_coherent_rect,
    pe_incoherent_rect,
)
from .quantum import (
    AdvantageReport,
    AlphaFit,
    ModePairState,
    advantage_report,
    crb_quantum,
    fit_advantage_coefficient,
    pe_qcb_quantum,
    qfi_delay_quantum,
    qfi_phase_coherent,
    qfi_phase_tmsv,
    qfi_upper_bound,
    threshold_snr_quantum,
    zzb_qcb_quantum,
)
from .scenario import (
    RadarLink,
    advantage_contour,
    antenna_gain,
    link_delay_prior,
    link_to_scenario,
    load_link_config,
    planck_brightness,
    roundtrip_transmissivity,
    solve_signal_brightness,
)
from .specfun import (
    bessel_i0,
    bessel_i1,
    bessel_i1i0_ratio,
    gaussian_q,
    inv_x_exp_neg_x,
)
from .waveform import (
    ChirpedGaussianPulse,
    GaussianFluorescenceSpectrum,
    RectangularPulse,
    TabulatedFluorescenceSpectrum,
    TabulatedSpectrumPulse,
    TransformLimitedGaussianPulse,
    load_tabulated_spectrum,
    pulse_value,
    quantum_spectral_mismatch,
    rms_bandwidth,
    rms_bandwidth_numeric,
    spectral_mismatch,
)
