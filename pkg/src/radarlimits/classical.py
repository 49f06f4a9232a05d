"""Accuracy limits of the coherent-state (classical) pulse-compression radar.

Covers the high-SNR Cramer-Rao bound, the exact and Chernoff error
probabilities of the two-delay hypothesis test, the Ziv-Zakai bound built
from them, the low/high-SNR asymptotes, and the threshold SNR where the
asymptotes intersect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from . import waveform
from .errors import DomainError, InfeasibleScenarioError, NumericsError
from .specfun import gaussian_q, inv_x_exp_neg_x

__all__ = [
    "SPEED_OF_LIGHT",
    "RadarScenario",
    "DelayPrior",
    "BoundCurve",
    "crb_classical",
    "pe_exact",
    "pe_chernoff",
    "zzb",
    "zzb_low_snr_asymptote",
    "zzb_high_snr_asymptote",
    "threshold_snr_classical",
]

SPEED_OF_LIGHT = 299792458.0  # m/s, exact

# Regime-flag cutoffs; recorded on scenarios, not enforced.
_KAPPA_SMALL_MAX = 1e-2
_HIGH_BACKGROUND_MIN = 10.0


@dataclass(frozen=True)
class RadarScenario:
    """Dimensionless operating point of either radar.

    Either `snr` alone, or the (`kappa`, `energy`, `n_b`) triplet, or a
    consistent combination of both may be supplied; snr = kappa * energy
    / n_b to 1e-12 relative when the triplet is present.

    Parameters
    ----------
    delta_omega : float
        rms bandwidth of the transmitted waveform, rad/s.
    snr : float, optional
        Signal-to-noise ratio kappa * energy / n_b.
    kappa, energy, n_b : float, optional
        Roundtrip transmissivity (0 < kappa <= 1), transmitted photons,
        and background photons per mode.
    assume_high_background : bool
        When only `snr` is given, whether the n_b >> 1 regime may be
        assumed (enables the simplified CRB form).
    """

    delta_omega: float
    snr: Optional[float] = None
    kappa: Optional[float] = None
    energy: Optional[float] = None
    n_b: Optional[float] = None
    assume_high_background: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.delta_omega) and self.delta_omega > 0.0):
            raise DomainError(f"delta_omega must be > 0, got {self.delta_omega!r}")
        triplet = (self.kappa, self.energy, self.n_b)
        have = [v is not None for v in triplet]
        if any(have) and not all(have):
            raise DomainError("kappa, energy and n_b must be supplied together")
        if all(have):
            if not (0.0 < self.kappa <= 1.0):
                raise DomainError(f"kappa must be in (0, 1], got {self.kappa!r}")
            if self.energy <= 0.0 or self.n_b <= 0.0:
                raise DomainError("energy and n_b must be > 0")
            derived = self.kappa * self.energy / self.n_b
            if self.snr is None:
                object.__setattr__(self, "snr", derived)
            elif abs(self.snr - derived) > 1e-12 * derived:
                raise DomainError(
                    f"inconsistent scenario: snr={self.snr!r} but "
                    f"kappa*energy/n_b={derived!r}"
                )
        if self.snr is None:
            raise DomainError("either snr or the (kappa, energy, n_b) triplet is required")
        if not (math.isfinite(self.snr) and self.snr > 0.0):
            raise DomainError(f"snr must be finite and > 0, got {self.snr!r}")

    @property
    def has_triplet(self) -> bool:
        return self.n_b is not None

    @property
    def kappa_small(self) -> bool:
        return self.kappa is None or self.kappa <= _KAPPA_SMALL_MAX

    @property
    def high_background(self) -> bool:
        if self.n_b is None:
            return self.assume_high_background
        return self.n_b >= _HIGH_BACKGROUND_MIN


@dataclass(frozen=True)
class DelayPrior:
    """Uniform prior on the range delay over a window of width delta_tau."""

    delta_tau: float
    tau_min: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.delta_tau) and self.delta_tau > 0.0):
            raise DomainError(f"delta_tau must be > 0, got {self.delta_tau!r}")

    @property
    def sigma_tau(self) -> float:
        """Standard deviation of the prior, delta_tau / sqrt(12)."""
        return self.delta_tau / math.sqrt(12.0)

    @classmethod
    def from_range_uncertainty(cls, delta_r_m: float, tau_min: float = 0.0) -> "DelayPrior":
        """Prior width from a range uncertainty: delta_tau = 2 delta_R / c."""
        return cls(2.0 * delta_r_m / SPEED_OF_LIGHT, tau_min)


@dataclass(frozen=True, eq=False)
class BoundCurve:
    """A sampled bound: abscissa grid, ordinate values, and provenance.

    kind is one of {"CRB", "ZZB_exact", "ZZB_QCB", "asymptote_low",
    "asymptote_high", "advantage", "contour_row"}.  Ordinates must be
    finite except in contour rows, where NaN marks infeasible cells.
    """

    abscissa: np.ndarray
    ordinate: np.ndarray
    kind: str
    abscissa_label: str = ""
    ordinate_label: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        a = np.asarray(self.abscissa, dtype=float)
        o = np.asarray(self.ordinate, dtype=float)
        object.__setattr__(self, "abscissa", a)
        object.__setattr__(self, "ordinate", o)
        if a.ndim != 1 or a.shape != o.shape:
            raise DomainError("abscissa and ordinate must be matching 1-d arrays")
        if a.size > 1 and np.any(np.diff(a) <= 0.0):
            raise DomainError("abscissa must be strictly increasing")
        if self.kind != "contour_row" and not np.all(np.isfinite(o)):
            raise DomainError("ordinate values must be finite")


def crb_classical(s: RadarScenario) -> float:
    """Cramer-Rao bound on the classical radar's rms delay error, seconds.

    With the full triplet available this is
    1 / (delta_omega * sqrt(2 kappa energy / (n_b + 1/2))); with snr only
    (and the high-background flag) it reduces to
    1 / (delta_omega * sqrt(2 snr)).
    """
    if s.has_triplet:
        fisher = 2.0 * s.kappa * s.energy / (s.n_b + 0.5)
        return 1.0 / (s.delta_omega * math.sqrt(fisher))
    if not s.high_background:
        raise DomainError(
            "snr-only scenarios need the high-background assumption for the CRB"
        )
    return 1.0 / (s.delta_omega * math.sqrt(2.0 * s.snr))


def pe_exact(s: RadarScenario, pulse, tau: float) -> float:
    """Exact error probability of the two-delay test, Q(sqrt(snr*gamma/2))."""
    gamma = waveform.spectral_mismatch(pulse, tau)
    return gaussian_q(math.sqrt(s.snr * gamma / 2.0))


def pe_chernoff(s: RadarScenario, pulse, tau: float) -> float:
    """Chernoff bound on the two-delay error probability, exp(-snr*gamma/4)/2.

    Dominates :func:`pe_exact` at equal arguments (Q(x) <= exp(-x^2/2)/2);
    it is also the quantum Chernoff bound for the optimum measurement on
    the classical radar's return.
    """
    gamma = waveform.spectral_mismatch(pulse, tau)
    return 0.5 * math.exp(-s.snr * gamma / 4.0)


def zzb(
    prior: DelayPrior,
    pe: Callable[[float], float],
    epsrel: float = 1e-10,
    check_rel: float = 1e-8,
) -> float:
    """Ziv-Zakai bound on the rms delay error, seconds.

    Evaluates sqrt(integral over [0, delta_tau] of
    tau' (1 - tau'/delta_tau) pe(tau') dtau') with adaptive Gauss-Kronrod
    quadrature.  The initial mesh is log-spaced toward tau' = 0 because at
    high SNR nearly all of the integrand's mass sits within a few
    1/(delta_omega sqrt(snr)) of the origin.

    Parameters
    ----------
    prior : DelayPrior
        Uniform prior window.
    pe : callable
        Error probability as a function of the delay offset, defined on
        [0, delta_tau].
    epsrel : float
        Relative tolerance passed to the quadrature.
    check_rel : float
        Maximum accepted ratio of reported quadrature error to the value.

    Raises
    ------
    NumericsError
        If the quadrature does not converge to `check_rel`.
    """
    dtau = prior.delta_tau

    def integrand(t: float) -> float:
        return t * (1.0 - t / dtau) * pe(t)

    breakpoints = dtau * np.logspace(-9.0, 0.0, 40)[:-1]
    out = quad(
        integrand,
        0.0,
        dtau,
        points=list(breakpoints),
        limit=400,
        epsabs=0.0,
        epsrel=epsrel,
        full_output=1,
    )
    value, abserr = out[0], out[1]
    if len(out) > 3:
        raise NumericsError(
            f"ZZB quadrature failed: {out[3]} "
            f"(value={value!r}, abserr={abserr!r}, neval={out[2]['neval']})"
        )
    if value < 0.0:
        value = 0.0
    if value > 0.0 and abserr > check_rel * value:
        raise NumericsError(
            f"ZZB quadrature error {abserr!r} exceeds {check_rel!r} "
            f"relative to value {value!r}"
        )
    return math.sqrt(value)


def zzb_low_snr_asymptote(prior: DelayPrior, s: RadarScenario, which: str = "exact") -> float:
    """Low-SNR asymptote of the classical ZZB.

    "exact" gives sqrt(delta_tau^2/6 * Q(sqrt(snr))); "qcb" gives
    sigma_tau * exp(-snr/4).  Both approach sigma_tau as snr -> 0.
    """
    if which == "exact":
        return math.sqrt(prior.delta_tau**2 / 6.0 * gaussian_q(math.sqrt(s.snr)))
    if which == "qcb":
        return prior.sigma_tau * math.exp(-s.snr / 4.0)
    raise DomainError(f"which must be 'exact' or 'qcb', got {which!r}")


def zzb_high_snr_asymptote(s: RadarScenario, which: str = "exact") -> float:
    """High-SNR asymptote: the CRB for "exact", sqrt(2)x the CRB for "qcb"."""
    base = 1.0 / (s.delta_omega * math.sqrt(2.0 * s.snr))
    if which == "exact":
        return base
    if which == "qcb":
        return math.sqrt(2.0) * base
    raise DomainError(f"which must be 'exact' or 'qcb', got {which!r}")


def threshold_snr_classical(prior: DelayPrior, delta_omega: float) -> float:
    """Threshold SNR of the classical radar (asymptote intersection).

    Equal to 2 f(1/(2 delta_omega^2 sigma_tau^2)) with f the x >= 1
    branch of the inverse of y = x exp(-x).  Requires the delay
    uncertainty to exceed the resolution scale, 2 (delta_omega
    sigma_tau)^2 > e; narrower priors have no threshold regime.
    """
    arg = 1.0 / (2.0 * (delta_omega * prior.sigma_tau) ** 2)
    if arg > math.exp(-1.0):
        raise InfeasibleScenarioError(
            "delay uncertainty is comparable to the delay resolution "
            f"(2 (delta_omega sigma_tau)^2 = {1.0/arg:.6g} <= e); "
            "no threshold SNR exists"
        )
    return 2.0 * inv_x_exp_neg_x(arg)
