"""Physical front end: Planck background, radar-equation transmissivity,
link-to-operating-point mapping, and the advantage contour over
(range, pulse duration).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy import constants as _const

from .classical import SPEED_OF_LIGHT, BoundCurve, DelayPrior, RadarScenario
from .errors import DomainError, InfeasibleScenarioError
from .quantum import (
    advantage_report,
    qfi_delay_quantum,
    threshold_snr_quantum,
)
from .waveform import GaussianFluorescenceSpectrum

__all__ = [
    "RadarLink",
    "planck_brightness",
    "antenna_gain",
    "roundtrip_transmissivity",
    "link_to_scenario",
    "link_delay_prior",
    "solve_signal_brightness",
    "advantage_contour",
    "load_link_config",
]

# Far-field bookkeeping: range must exceed this many aperture diameters.
_FAR_FIELD_RATIO = 10.0


@dataclass(frozen=True)
class RadarLink:
    """Physical description of a monostatic link.

    Parameters
    ----------
    carrier : float
        Carrier angular frequency omega_0, rad/s.
    antenna_area_m2, cross_section_m2 : float
        Effective antenna area and target radar cross-section.
    noise_temp_k : float
        Receiver noise temperature.
    range_m : float
        Target range R.
    range_uncertainty_m : float, optional
        Width of the range uncertainty window; alternatively give
        `range_uncertainty_fraction` to use delta_R = fraction * R.
    pulse_duration_s : float
        Transmitted pulse duration T.
    rms_bandwidth : float
        rms bandwidth delta_omega, rad/s.
    signal_brightness : float, optional
        Source photons per mode N_S; may be left unset and solved for.
    """

    carrier: float
    antenna_area_m2: float
    cross_section_m2: float
    noise_temp_k: float
    range_m: float
    pulse_duration_s: float
    rms_bandwidth: float
    range_uncertainty_m: Optional[float] = None
    range_uncertainty_fraction: Optional[float] = None
    signal_brightness: Optional[float] = None

    def __post_init__(self):
        for name in ("carrier", "antenna_area_m2", "cross_section_m2",
                     "noise_temp_k", "range_m", "pulse_duration_s",
                     "rms_bandwidth"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")
        if (self.range_uncertainty_m is None) == (self.range_uncertainty_fraction is None):
            raise DomainError(
                "give exactly one of range_uncertainty_m or range_uncertainty_fraction"
            )
        if self.signal_brightness is not None and self.signal_brightness <= 0.0:
            raise DomainError("signal_brightness must be > 0 when given")

    @property
    def delta_r_m(self) -> float:
        if self.range_uncertainty_m is not None:
            return self.range_uncertainty_m
        return self.range_uncertainty_fraction * self.range_m

    @property
    def roundtrip_delay(self) -> float:
        return 2.0 * self.range_m / SPEED_OF_LIGHT

    @property
    def far_field(self) -> bool:
        return self.range_m >= _FAR_FIELD_RATIO * math.sqrt(self.antenna_area_m2)

    @property
    def time_bandwidth(self) -> float:
        return self.rms_bandwidth * self.pulse_duration_s


def planck_brightness(omega0: float, noise_temp_k: float) -> float:
    """Planck occupation of the background, 1/(exp(hbar w0 / kB T) - 1)."""
    if omega0 <= 0.0 or noise_temp_k <= 0.0:
        raise DomainError("omega0 and noise_temp_k must be > 0")
    x = _const.hbar * omega0 / (_const.k * noise_temp_k)
    return 1.0 / math.expm1(x)


def antenna_gain(omega0: float, antenna_area_m2: float) -> float:
    """Aperture gain A_R / lambda^2 with lambda = 2 pi c / omega0."""
    lam = 2.0 * math.pi * SPEED_OF_LIGHT / omega0
    return antenna_area_m2 / lam**2


def roundtrip_transmissivity(link: RadarLink) -> float:
    """Radar-equation roundtrip transmissivity.

    kappa = (G_T / 4 pi R^2) * (sigma A_R / 4 pi R^2), an R^-4 law.
    Raises if kappa >= 1 (target inside the model's validity range).
    """
    gain = antenna_gain(link.carrier, link.antenna_area_m2)
    r_sq = link.range_m**2
    kappa = (gain / (4.0 * math.pi * r_sq)) * (
        link.cross_section_m2 * link.antenna_area_m2 / (4.0 * math.pi * r_sq)
    )
    if kappa >= 1.0:
        raise InfeasibleScenarioError(
            f"roundtrip transmissivity {kappa!r} >= 1; target violates the link model"
        )
    return kappa


def link_to_scenario(link: RadarLink) -> RadarScenario:
    """Map a physical link to its dimensionless operating point.

    snr = kappa * M * N_S / N_B with time-bandwidth product
    M = delta_omega * T, so the transmitted energy is N_S * M photons.
    """
    if link.signal_brightness is None:
        raise DomainError("link needs signal_brightness; solve_signal_brightness first")
    kappa = roundtrip_transmissivity(link)
    n_b = planck_brightness(link.carrier, link.noise_temp_k)
    energy = link.signal_brightness * link.time_bandwidth
    return RadarScenario(
        delta_omega=link.rms_bandwidth, kappa=kappa, energy=energy, n_b=n_b
    )


def link_delay_prior(link: RadarLink) -> DelayPrior:
    """Uniform delay prior implied by the link's range uncertainty."""
    return DelayPrior.from_range_uncertainty(link.delta_r_m)


def solve_signal_brightness(link: RadarLink, snr: float) -> RadarLink:
    """Return a copy of the link with N_S set to reach the requested SNR."""
    if snr <= 0.0:
        raise DomainError(f"snr must be > 0, got {snr!r}")
    kappa = roundtrip_transmissivity(link)
    n_b = planck_brightness(link.carrier, link.noise_temp_k)
    n_s = snr * n_b / (kappa * link.time_bandwidth)
    return replace(link, signal_brightness=n_s)


def _cell_advantage(link: RadarLink, fixed_n_s: Optional[float]):
    """Advantage (dB), N_S, SNR and regime tag for one contour cell."""
    prior = link_delay_prior(link)
    kappa = roundtrip_transmissivity(link)
    n_b = planck_brightness(link.carrier, link.noise_temp_k)
    snr_thresh = threshold_snr_quantum(prior, link.rms_bandwidth)
    if fixed_n_s is None:
        n_s = snr_thresh * n_b / (kappa * link.time_bandwidth)
        at_snr = snr_thresh
    else:
        n_s = fixed_n_s
        at_snr = kappa * link.time_bandwidth * n_s / n_b

    fluor = GaussianFluorescenceSpectrum(
        n_s=n_s, rms_bandwidth=link.rms_bandwidth, duration=link.pulse_duration_s
    )
    if fluor.low_brightness:
        rep = advantage_report(prior, link.rms_bandwidth, at_snr=at_snr)
        return rep.advantage_exact_vs_qcb_db, n_s, at_snr, "low_brightness"
    # Beyond the low-brightness regime the Chernoff exponent above is
    # invalid; fall back to the ratio of delay Fisher informations, which
    # holds at any brightness (and decays from 3 dB toward 0).
    f_full = qfi_delay_quantum(fluor, kappa, n_b, mode="full")
    f_classical = 2.0 * link.rms_bandwidth**2 * at_snr
    return 10.0 * math.log10(f_full / f_classical), n_s, at_snr, "high_brightness"


def advantage_contour(
    link: RadarLink,
    range_grid_m,
    duration_grid_s,
    signal_brightness: Optional[float] = None,
) -> list:
    """Advantage map over (range, pulse duration), one BoundCurve per range.

    For each cell the link template is re-ranged and re-timed, the delay
    window follows the link's fraction-of-range rule, and either N_S is
    solved to put the radar at its quantum threshold SNR (default) or the
    supplied fixed `signal_brightness` is used with the cell's own link
    SNR.  Infeasible cells (no threshold regime, or kappa >= 1) carry NaN
    and the tag "infeasible" instead of aborting the sweep.

    Returns
    -------
    list of BoundCurve
        Row-major rows: one curve per range, abscissa the duration grid,
        metadata carrying per-cell N_S, SNR and regime tags.
    """
    ranges = np.asarray(range_grid_m, dtype=float)
    durations = np.asarray(duration_grid_s, dtype=float)
    if ranges.size == 0 or durations.size == 0:
        raise DomainError("contour grids must be non-empty")
    if np.any(np.diff(ranges) <= 0.0) or np.any(np.diff(durations) <= 0.0):
        raise DomainError("contour grids must be strictly increasing")
    if link.range_uncertainty_fraction is None:
        raise DomainError("contour links must use the fraction-of-range rule")

    rows = []
    for r in ranges:
        adv = np.full(durations.size, np.nan)
        n_s_row = np.full(durations.size, np.nan)
        snr_row = np.full(durations.size, np.nan)
        tags = []
        for j, t_pulse in enumerate(durations):
            cell = replace(link, range_m=float(r), pulse_duration_s=float(t_pulse))
            try:
                adv[j], n_s_row[j], snr_row[j], tag = _cell_advantage(
                    cell, signal_brightness
                )
            except InfeasibleScenarioError:
                tag = "infeasible"
            tags.append(tag)
        rows.append(
            BoundCurve(
                abscissa=durations,
                ordinate=adv,
                kind="contour_row",
                abscissa_label="pulse_duration_s",
                ordinate_label="advantage_db",
                metadata={
                    "range_m": float(r),
                    "n_s": n_s_row.tolist(),
                    "snr": snr_row.tolist(),
                    "regime": tags,
                },
            )
        )
    return rows


_CONFIG_KEYS = {
    "carrier_hz",
    "antenna_area_m2",
    "cross_section_m2",
    "noise_temp_k",
    "range_m",
    "range_uncertainty_m",
    "range_uncertainty_fraction",
    "pulse_duration_s",
    "rms_bandwidth_hz",
    "signal_brightness",
}


def load_link_config(path) -> RadarLink:
    """Read a flat key = value link description.

    Frequencies are given in Hz in the file and converted to rad/s here;
    '#' starts a comment and blank lines are ignored.
    """
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key = value, got {raw!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
            if key in values:
                raise DomainError(f"{path}:{lineno}: duplicate key {key!r}")
            try:
                values[key] = float(val.strip())
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: bad number {val.strip()!r}") from exc

    required = {"carrier_hz", "antenna_area_m2", "cross_section_m2",
                "noise_temp_k", "range_m", "pulse_duration_s", "rms_bandwidth_hz"}
    missing = sorted(required - values.keys())
    if missing:
        raise DomainError(f"{path}: missing keys: {', '.join(missing)}")

    return RadarLink(
        carrier=2.0 * math.pi * values["carrier_hz"],
        antenna_area_m2=values["antenna_area_m2"],
        cross_section_m2=values["cross_section_m2"],
        noise_temp_k=values["noise_temp_k"],
        range_m=values["range_m"],
        pulse_duration_s=values["pulse_duration_s"],
        rms_bandwidth=2.0 * math.pi * values["rms_bandwidth_hz"],
        range_uncertainty_m=values.get("range_uncertainty_m"),
        range_uncertainty_fraction=values.get("range_uncertainty_fraction"),
        signal_brightness=values.get("signal_brightness"),
    )
