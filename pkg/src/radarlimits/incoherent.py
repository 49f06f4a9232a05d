"""Phase-incoherent reception: Monte-Carlo Fisher information and
rectangular-pulse error probabilities.

When the return phase is unknown, the heterodyne radar's delay likelihood
involves the envelope |z(tau)| of the matched-filter output and a Bessel
ratio; its Fisher information has no closed form and is estimated here by
Monte Carlo.  For the rectangular pulse the incoherent test's error
probability has a closed form that exactly matches the phase-coherent
Chernoff bound.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import i0e, i1e

from .errors import DomainError, UnsupportedWaveformError
from .specfun import gaussian_q
from .waveform import TransformLimitedGaussianPulse

__all__ = [
    "HeterodyneModel",
    "MCConfig",
    "MCResult",
    "fisher_incoherent_mc",
    "matched_filter_derivative",
    "fisher_coherent",
    "pe_incoherent_rect",
    "pe_coherent_rect",
]

# Samples per RNG block; fixed so that estimates are independent of the
# worker count (each block draws from its own counter-keyed stream).
_BLOCK = 1024


@dataclass(frozen=True)
class HeterodyneModel:
    """Discretized heterodyne observation model.

    The received complex envelope sqrt(kappa*energy) s(t - tau) + w(t) is
    sampled on a grid of step `dt` spanning +/- `span` rms durations
    around the delay of interest; each noise sample has variance n_b + 1.

    Parameters
    ----------
    kappa : float
        Roundtrip transmissivity.
    energy : float
        Transmitted photons; only the product kappa*energy matters.
    n_b : float
        Background photons per mode.
    pulse : TransformLimitedGaussianPulse
        Pulse shape (the Monte-Carlo path requires the transform-limited
        Gaussian, whose template derivative is analytic).
    dt : float, optional
        Grid step; defaults to T/50 and must not exceed T/20 for the
        point-sample approximation of the template to hold.
    span : float
        Half-width of the grid in rms durations; at least 10.
    """

    kappa: float
    energy: float
    n_b: float
    pulse: TransformLimitedGaussianPulse
    dt: Optional[float] = None
    span: float = 12.0

    def __post_init__(self):
        if self.kappa < 0.0 or self.energy < 0.0:
            raise DomainError("kappa and energy must be >= 0")
        if self.n_b + 1.0 <= 0.0:
            raise DomainError("n_b + 1 must be > 0")
        if not isinstance(self.pulse, TransformLimitedGaussianPulse):
            raise UnsupportedWaveformError(
                "the Monte-Carlo model requires a transform-limited Gaussian pulse"
            )
        T = self.pulse.duration
        if self.dt is None:
            object.__setattr__(self, "dt", T / 50.0)
        if self.dt > T / 20.0:
            raise DomainError(f"dt must be <= T/20 = {T/20.0!r}, got {self.dt!r}")
        if self.span < 10.0:
            raise DomainError(f"span must cover >= 10 rms durations, got {self.span!r}")

    def time_grid(self, center: float = 0.0) -> np.ndarray:
        n = int(math.ceil(self.span * self.pulse.duration / self.dt))
        return center + np.arange(-n, n + 1) * self.dt

    def template(self, times: np.ndarray, tau: float) -> np.ndarray:
        """Discretized template s~_m(tau) ~= s(t_m - tau) sqrt(dt), real."""
        T = self.pulse.duration
        u = times - tau
        amp = (2.0 * math.pi * T * T) ** -0.25 * math.sqrt(self.dt)
        return amp * np.exp(-(u * u) / (4.0 * T * T))

    def template_tau_derivative(self, times: np.ndarray, tau: float) -> np.ndarray:
        """d s~_m(tau) / d tau for the Gaussian template."""
        T = self.pulse.duration
        return self.template(times, tau) * (times - tau) / (2.0 * T * T)


@dataclass(frozen=True)
class MCConfig:
    """Monte-Carlo settings: sample count, 64-bit seed, derivative mode.

    derivative_mode "analytic" uses the closed-form template derivative;
    "central_difference" differences |z(tau +/- h)| with step `fd_step`.
    """

    samples: int
    seed: int = 0
    derivative_mode: str = "analytic"
    fd_step: Optional[float] = None

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError("samples must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise DomainError("seed must fit in 64 bits")
        if self.derivative_mode not in ("analytic", "central_difference"):
            raise DomainError(f"unknown derivative_mode {self.derivative_mode!r}")
        if self.derivative_mode == "central_difference":
            if self.fd_step is None or self.fd_step <= 0.0:
                raise DomainError("central_difference mode needs fd_step > 0")


@dataclass(frozen=True)
class MCResult:
    """Estimate, standard error, and any convergence warnings."""

    estimate: float
    std_error: float
    samples: int
    warnings: tuple = ()


def fisher_incoherent_mc(
    model: HeterodyneModel,
    config: MCConfig,
    true_tau: float = 0.0,
    workers: int = 1,
) -> MCResult:
    """Monte-Carlo estimate of the phase-incoherent Fisher information.

    Each draw synthesizes a noisy return at `true_tau`, evaluates the
    incoherent score
    [I1(a)/I0(a) * 2 sqrt(kappa*energy)/(n_b+1) * d|z|/dtau]^2 with
    a = 2 sqrt(kappa*energy) |z| / (n_b + 1), and averages.  The return
    phase is fixed to zero: the score depends on the data only through
    |z|, whose law is phase-invariant, so this loses no generality and
    halves the variance.

    Per-sample randomness is counter-keyed by (seed, block index), so the
    result is bit-identical for a given (seed, samples) regardless of
    `workers`.

    Returns
    -------
    MCResult
        estimate and std_error in s^-2.
    """
    times = model.time_grid(true_tau)
    st = model.template(times, true_tau)
    amp = math.sqrt(model.kappa * model.energy)
    noise_var = model.n_b + 1.0

    if config.derivative_mode == "analytic":
        deriv_templates = (model.template_tau_derivative(times, true_tau),)
    else:
        h = config.fd_step
        deriv_templates = (
            model.template(times, true_tau + h),
            model.template(times, true_tau - h),
        )

    n_blocks = (config.samples + _BLOCK - 1) // _BLOCK
    block_sizes = [
        min(_BLOCK, config.samples - i * _BLOCK) for i in range(n_blocks)
    ]

    def run_block(idx: int):
        stats = _block_scores(
            model, config.seed, idx, block_sizes[idx], st, deriv_templates,
            amp, noise_var, config.derivative_mode, config.fd_step,
        )
        return float(np.sum(stats)), float(np.sum(stats * stats))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run_block, range(n_blocks)))
    else:
        partials = [run_block(i) for i in range(n_blocks)]

    total = math.fsum(p[0] for p in partials)
    total_sq = math.fsum(p[1] for p in partials)
    n = config.samples
    estimate = total / n
    variance = max(total_sq / n - estimate * estimate, 0.0)
    std_error = math.sqrt(variance / n)

    notes = []
    if estimate > 0.0 and std_error / estimate > 0.5:
        notes.append("relative standard error exceeds 0.5; increase samples")
    return MCResult(estimate=estimate, std_error=std_error, samples=n,
                    warnings=tuple(notes))


def _block_scores(model, seed, block_idx, size, st, deriv_templates, amp,
                  noise_var, mode, fd_step):
    """Scores for one counter-keyed block of noise draws."""
    rng = np.random.Generator(np.random.Philox(key=(seed << 64) | block_idx))
    scale = math.sqrt(noise_var / 2.0)
    wr = rng.standard_normal((size, st.size)) * scale
    wi = rng.standard_normal((size, st.size)) * scale

    s0 = float(st @ st)  # ~= 1 (template normalization)
    z_re = amp * s0 + wr @ st
    z_im = wi @ st
    abs_z = np.hypot(z_re, z_im)

    if mode == "analytic":
        std = deriv_templates[0]
        zp_re = amp * float(st @ std) + wr @ std
        zp_im = wi @ std
        dabs = (z_re * zp_re + z_im * zp_im) / abs_z
    else:
        st_p, st_m = deriv_templates
        zp_abs = np.hypot(amp * float(st @ st_p) + wr @ st_p, wi @ st_p)
        zm_abs = np.hypot(amp * float(st @ st_m) + wr @ st_m, wi @ st_m)
        dabs = (zp_abs - zm_abs) / (2.0 * fd_step)

    arg = 2.0 * amp * abs_z / noise_var
    ratio = i1e(arg) / i0e(arg)  # scaled forms keep large arguments finite
    score = ratio * (2.0 * amp / noise_var) * dabs
    return score * score


def matched_filter_derivative(
    model: HeterodyneModel,
    received: np.ndarray,
    tau: float,
    grid_center: float = 0.0,
) -> float:
    """Derivative of the matched-filter envelope |z(tau)| w.r.t. tau.

    z(tau) is the inner product of the received samples (on the model
    grid centered at `grid_center`) with the template at `tau`; the
    analytic derivative is Re(conj(z) z')/|z|.

    Raises
    ------
    DomainError
        If |z(tau)| vanishes (measure-zero event; derivative undefined).
    """
    times = model.time_grid(grid_center)
    received = np.asarray(received)
    if received.shape != times.shape:
        raise DomainError(
            f"received samples must match the model grid ({times.size} points)"
        )
    st = model.template(times, tau)
    std = model.template_tau_derivative(times, tau)
    z = np.sum(received * st)
    if abs(z) == 0.0:
        raise DomainError("matched-filter output is zero; derivative undefined")
    zp = np.sum(received * std)
    return float((z.conjugate() * zp).real / abs(z))


def fisher_coherent(kappa_energy: float, n_b: float, delta_omega: float) -> float:
    """Phase-coherent heterodyne Fisher information,
    2 kappa*energy delta_omega^2 / (n_b + 1)."""
    if kappa_energy < 0.0 or n_b + 1.0 <= 0.0 or delta_omega <= 0.0:
        raise DomainError("fisher_coherent arguments out of range")
    return 2.0 * kappa_energy * delta_omega**2 / (n_b + 1.0)


def _check_rect_args(pulse_duration, kappa_energy, n_b, tau):
    if pulse_duration <= 0.0 or kappa_energy <= 0.0 or n_b <= 0.0:
        raise DomainError("pulse_duration, kappa_energy and n_b must be > 0")
    if tau < 0.0:
        raise DomainError(f"delay offset must be >= 0, got {tau!r}")


def pe_incoherent_rect(
    pulse_duration: float, kappa_energy: float, n_b: float, tau: float
) -> float:
    """Error probability of the incoherent envelope test, rectangular pulse.

    exp(-kappa*energy * tau / (2 T_s (n_b+1)))/2 for tau <= T_s, constant
    beyond (the pulses no longer overlap); continuous at tau = T_s and
    identical to the coherent Chernoff bound at every argument.
    """
    _check_rect_args(pulse_duration, kappa_energy, n_b, tau)
    overlap = min(tau, pulse_duration) / pulse_duration
    return 0.5 * math.exp(-kappa_energy * overlap / (2.0 * (n_b + 1.0)))


def pe_coherent_rect(
    pulse_duration: float,
    kappa_energy: float,
    n_b: float,
    tau: float,
    form: str = "exact",
) -> float:
    """Coherent-test error probability for the rectangular pulse.

    form="exact" gives Q(sqrt(kappa*energy * min(tau, T_s)/(T_s (n_b+1))));
    form="chernoff" the matching exponential bound.
    """
    _check_rect_args(pulse_duration, kappa_energy, n_b, tau)
    overlap = min(tau, pulse_duration) / pulse_duration
    x = kappa_energy * overlap / (n_b + 1.0)
    if form == "exact":
        return gaussian_q(math.sqrt(x))
    if form == "chernoff":
        return 0.5 * math.exp(-x / 2.0)
    raise DomainError(f"form must be 'exact' or 'chernoff', got {form!r}")
