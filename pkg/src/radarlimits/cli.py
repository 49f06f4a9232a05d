"""Command-line front end: sweep drivers and CSV/JSON emission.

Subcommands: crb, zzb, threshold, advantage, contour, incoherent-mc.
All frequency flags take Hz (converted to rad/s here, the only place unit
conversion happens), distances take meters, and output is deterministic:
identical command lines produce byte-identical output.

Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 infeasible
scenario.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .classical import (
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
    fisher_coherent,
    fisher_incoherent_mc,
)
from .quantum import (
    advantage_report,
    crb_quantum,
    fit_advantage_coefficient,
    threshold_snr_quantum,
    zzb_qcb_quantum,
)
from .scenario import advantage_contour, load_link_config
from .waveform import GaussianFluorescenceSpectrum, TransformLimitedGaussianPulse

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_INFEASIBLE = 4

_TWO_PI = 2.0 * math.pi


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    """Scientific notation with 9 significant digits; lossless for the
    tolerances in play."""
    if isinstance(value, str):
        return value
    v = float(value)
    if math.isnan(v):
        return "nan"
    return f"{v:.8e}"


def parse_sweep(text: str, scale: str = "linear") -> np.ndarray:
    """Parse 'start:stop:points' into a grid (linear or log spacing)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"sweep must be start:stop:points, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        points = int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad sweep {text!r}: {exc}") from exc
    if points < 2:
        raise UsageError(f"sweep needs at least 2 points, got {points}")
    if not start < stop:
        raise UsageError(f"sweep needs start < stop, got {text!r}")
    if scale == "log":
        if start <= 0.0:
            raise UsageError("log sweeps need positive endpoints")
        return np.geomspace(start, stop, points)
    return np.linspace(start, stop, points)


def _emit(args, params: dict, columns: list, rows: list, footer_comments=()):
    """Write the result as CSV or JSON to --out (default stdout)."""
    lines = []
    if args.format == "csv":
        lines.append(f"# radarlimits {__version__}")
        lines.append(f"# command = {args.command}")
        for key in sorted(params):
            lines.append(f"# {key} = {params[key]}")
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        lines.extend(footer_comments)
    else:
        payload = {
            "tool": "radarlimits",
            "version": __version__,
            "command": args.command,
            "params": params,
            "columns": columns,
            "rows": [
                [v if isinstance(v, str) else float(v) for v in row] for row in rows
            ],
        }
        lines.append(json.dumps(payload, sort_keys=True, indent=2))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_config(args) -> dict:
    if not getattr(args, "config", None):
        return {}
    link = load_link_config(args.config)
    cfg = {
        "rms_bandwidth_hz": link.rms_bandwidth / _TWO_PI,
        "delta_r_m": link.delta_r_m,
        "link": link,
    }
    if link.signal_brightness is not None:
        cfg["signal_brightness"] = link.signal_brightness
    return cfg


def _resolve(args, cfg, attr, cfg_key, default=None):
    """Flag value, else config value, else default (no environment)."""
    value = getattr(args, attr, None)
    if value is not None:
        return value
    if cfg_key in cfg:
        return cfg[cfg_key]
    return default


def _require_bandwidth(args, cfg) -> float:
    hz = _resolve(args, cfg, "rms_bandwidth_hz", "rms_bandwidth_hz")
    if hz is None:
        raise UsageError("--rms-bandwidth-hz (or a config file) is required")
    if hz <= 0.0:
        raise UsageError("--rms-bandwidth-hz must be > 0")
    return _TWO_PI * hz


def _require_prior(args, cfg) -> DelayPrior:
    if getattr(args, "delta_tau_s", None) is not None:
        return DelayPrior(args.delta_tau_s)
    dr = _resolve(args, cfg, "delta_r_m", "delta_r_m")
    if dr is None:
        raise UsageError("--delta-r-m or --delta-tau-s (or a config file) is required")
    return DelayPrior.from_range_uncertainty(dr)


def _snr_grid(args) -> np.ndarray:
    if args.snr_sweep is not None and args.snr_db is not None:
        raise UsageError("give either --snr-db or --snr-sweep, not both")
    if args.snr_sweep is not None:
        return parse_sweep(args.snr_sweep, scale="linear")
    if args.snr_db is not None:
        return np.array([args.snr_db])
    raise UsageError("--snr-db or --snr-sweep is required")


def _reference_waveforms(prior: DelayPrior, delta_omega: float):
    pulse = TransformLimitedGaussianPulse(duration=0.5 / delta_omega)
    duration = max(100.0 * _TWO_PI / delta_omega, 10.0 * prior.delta_tau)
    fluor = GaussianFluorescenceSpectrum(
        n_s=1e-3, rms_bandwidth=delta_omega, duration=duration
    )
    return pulse, fluor


# ---------------------------------------------------------------------------
# subcommands


def cmd_crb(args) -> int:
    cfg = _load_config(args)
    delta_omega = _require_bandwidth(args, cfg)
    snr_db = _snr_grid(args)
    rows = []
    for s_db in snr_db:
        scen = RadarScenario(delta_omega=delta_omega, snr=10.0 ** (s_db / 10.0))
        c_cl = crb_classical(scen)
        c_q = crb_quantum(scen)
        rows.append([s_db, c_cl, c_q, 20.0 * math.log10(c_cl / c_q)])
    params = {
        "rms_bandwidth_hz": _fmt(delta_omega / _TWO_PI),
        "ratio_db_convention": "10log10 of mean-squared ratio",
    }
    _emit(args, params, ["snr_db", "crb_classical_s", "crb_quantum_s", "ratio_db"], rows)
    return EXIT_OK


_ZZB_COLUMNS = [
    "snr_db",
    "zzb_classical_exact_db",
    "zzb_classical_qcb_db",
    "zzb_quantum_qcb_db",
    "asym_classical_exact_low_db",
    "asym_classical_qcb_low_db",
    "asym_quantum_qcb_low_db",
    "asym_classical_exact_high_db",
    "asym_classical_qcb_high_db",
    "asym_quantum_qcb_high_db",
]


def cmd_zzb(args) -> int:
    cfg = _load_config(args)
    delta_omega = _require_bandwidth(args, cfg)
    prior = _require_prior(args, cfg)
    snr_db = _snr_grid(args)
    pulse, fluor = _reference_waveforms(prior, delta_omega)
    sigma = prior.sigma_tau

    def db(x: float) -> float:
        return 20.0 * math.log10(x / sigma)

    failures = 0
    rows = []
    for s_db in snr_db:
        scen = RadarScenario(delta_omega=delta_omega, snr=10.0 ** (s_db / 10.0))
        try:
            z_exact = db(zzb(prior, lambda t: pe_exact(scen, pulse, t)))
            z_qcb = db(zzb(prior, lambda t: pe_chernoff(scen, pulse, t)))
            z_q = db(zzb_qcb_quantum(prior, scen, fluor))
        except NumericsError:
            failures += 1
            z_exact = z_qcb = z_q = float("nan")
        rows.append([
            s_db, z_exact, z_qcb, z_q,
            db(zzb_low_snr_asymptote(prior, scen, "exact")),
            db(zzb_low_snr_asymptote(prior, scen, "qcb")),
            db(sigma * math.exp(-scen.snr)),
            db(zzb_high_snr_asymptote(scen, "exact")),
            db(zzb_high_snr_asymptote(scen, "qcb")),
            db(crb_quantum(scen)),
        ])

    snr_q = threshold_snr_quantum(prior, delta_omega)
    snr_c = threshold_snr_classical(prior, delta_omega)
    thresholds = {
        "snr_thresh_quantum_db": 10.0 * math.log10(snr_q),
        "snr_thresh_classical_db": 10.0 * math.log10(snr_c),
        "gap_db": 10.0 * math.log10(snr_c / snr_q),
    }
    params = {
        "rms_bandwidth_hz": _fmt(delta_omega / _TWO_PI),
        "delta_tau_s": _fmt(prior.delta_tau),
        "sigma_tau_s": _fmt(sigma),
        "ordinate_convention": "20log10(delay_rms / sigma_tau)",
    }
    sidecar = json.dumps(thresholds, sort_keys=True)
    footer = []
    if args.out:
        with open(args.out + ".thresholds.json", "w", encoding="utf-8") as fh:
            fh.write(sidecar + "\n")
    elif args.format == "csv":
        footer.append(f"# thresholds: {sidecar}")
    else:
        params["thresholds"] = thresholds
    _emit(args, params, _ZZB_COLUMNS, rows, footer_comments=footer)

    if failures > 0.1 * len(rows):
        print(f"zzb: {failures}/{len(rows)} rows failed quadrature", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_threshold(args) -> int:
    cfg = _load_config(args)
    delta_omega = _require_bandwidth(args, cfg)
    prior = _require_prior(args, cfg)
    snr_q = threshold_snr_quantum(prior, delta_omega)
    snr_c = threshold_snr_classical(prior, delta_omega)
    params = {
        "rms_bandwidth_hz": _fmt(delta_omega / _TWO_PI),
        "delta_tau_s": _fmt(prior.delta_tau),
    }
    rows = [[
        10.0 * math.log10(snr_q),
        10.0 * math.log10(snr_c),
        10.0 * math.log10(snr_c / snr_q),
    ]]
    _emit(args, params,
          ["snr_thresh_quantum_db", "snr_thresh_classical_db", "gap_db"], rows)
    return EXIT_OK


def cmd_advantage(args) -> int:
    cfg = _load_config(args)
    delta_omega = _require_bandwidth(args, cfg)
    prior = _require_prior(args, cfg)
    at = "quantum_threshold" if args.at_snr_db is None else 10.0 ** (args.at_snr_db / 10.0)
    alpha = None
    if args.alpha_fit_delta_r_m:
        grid = parse_sweep(args.alpha_fit_delta_r_m, scale="log")
        alpha = fit_advantage_coefficient(delta_omega, grid).alpha
    rep = advantage_report(prior, delta_omega, at_snr=at, alpha_fit=alpha)
    params = {
        "rms_bandwidth_hz": _fmt(delta_omega / _TWO_PI),
        "delta_tau_s": _fmt(prior.delta_tau),
        "advantage_db_convention": "10log10 of mean-squared ratio",
    }
    columns = [
        "snr_thresh_quantum_db",
        "snr_thresh_classical_db",
        "at_snr_db",
        "advantage_qcb_vs_qcb_db",
        "advantage_exact_vs_qcb_db",
        "asymptotic_advantage_db",
        "alpha_fit",
    ]
    rows = [[
        10.0 * math.log10(rep.snr_thresh_quantum),
        10.0 * math.log10(rep.snr_thresh_classical),
        10.0 * math.log10(rep.at_snr),
        rep.advantage_qcb_vs_qcb_db,
        rep.advantage_exact_vs_qcb_db,
        rep.asymptotic_advantage_db,
        float("nan") if rep.alpha_fit is None else rep.alpha_fit,
    ]]
    _emit(args, params, columns, rows)
    return EXIT_OK


def cmd_contour(args) -> int:
    cfg = _load_config(args)
    link = cfg.get("link")
    if link is None:
        raise UsageError("contour requires --config with the link parameters")
    ranges = parse_sweep(args.range_sweep, scale="log")
    durations = parse_sweep(args.duration_sweep, scale="log")
    n_s = _resolve(args, cfg, "signal_brightness", "signal_brightness")
    rows_curves = advantage_contour(link, ranges, durations, signal_brightness=n_s)
    rows = []
    for curve in rows_curves:
        r = curve.metadata["range_m"]
        for j, t_pulse in enumerate(curve.abscissa):
            snr = curve.metadata["snr"][j]
            rows.append([
                r,
                t_pulse,
                curve.ordinate[j],
                curve.metadata["regime"][j],
                curve.metadata["n_s"][j],
                float("nan") if math.isnan(snr) else 10.0 * math.log10(snr),
            ])
    params = {
        "rms_bandwidth_hz": _fmt(link.rms_bandwidth / _TWO_PI),
        "carrier_hz": _fmt(link.carrier / _TWO_PI),
        "noise_temp_k": _fmt(link.noise_temp_k),
        "range_uncertainty_fraction": _fmt(link.range_uncertainty_fraction or float("nan")),
        "signal_brightness": "solved" if n_s is None else _fmt(n_s),
    }
    _emit(args, params,
          ["range_m", "pulse_duration_s", "advantage_db", "regime", "n_s", "snr_db"],
          rows)
    return EXIT_OK


def cmd_incoherent_mc(args) -> int:
    cfg = _load_config(args)
    delta_omega = _require_bandwidth(args, cfg)
    snr_db = _snr_grid(args)
    n_b = args.n_b
    pulse = TransformLimitedGaussianPulse(duration=0.5 / delta_omega)
    rows = []
    for s_db in snr_db:
        kappa_energy = 10.0 ** (s_db / 10.0) * n_b
        model = HeterodyneModel(kappa=1.0, energy=kappa_energy, n_b=n_b, pulse=pulse)
        config = MCConfig(samples=args.samples, seed=args.seed)
        result = fisher_incoherent_mc(model, config, workers=args.workers)
        rows.append([
            s_db,
            result.estimate,
            fisher_coherent(kappa_energy, n_b, delta_omega),
            result.std_error,
        ])
    params = {
        "rms_bandwidth_hz": _fmt(delta_omega / _TWO_PI),
        "n_b": _fmt(n_b),
        "samples": str(args.samples),
        "seed": str(args.seed),
        "snr_definition": "kappa*energy/n_b",
    }
    _emit(args, params,
          ["snr_db", "fisher_incoherent", "fisher_coherent", "std_error"], rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser, prior: bool = True, snr: bool = True):
    p.add_argument("--rms-bandwidth-hz", type=float, help="rms bandwidth in Hz")
    p.add_argument("--config", help="flat key=value link config file")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    if prior:
        p.add_argument("--delta-r-m", type=float, help="range uncertainty in meters")
        p.add_argument("--delta-tau-s", type=float, help="delay uncertainty in seconds")
    if snr:
        p.add_argument("--snr-db", type=float, help="single SNR point in dB")
        p.add_argument("--snr-sweep", help="SNR sweep start:stop:points in dB")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radarlimits",
        description="Range-delay accuracy limits of classical and "
                    "entanglement-assisted pulse-compression radar",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("crb", help="Cramer-Rao bounds vs SNR")
    _add_common(p, prior=False)
    p.set_defaults(func=cmd_crb)

    p = sub.add_parser("zzb", help="Ziv-Zakai bounds and asymptotes vs SNR")
    _add_common(p)
    p.set_defaults(func=cmd_zzb)

    p = sub.add_parser("threshold", help="threshold SNRs and their gap")
    _add_common(p, snr=False)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("advantage", help="accuracy-advantage report")
    _add_common(p, snr=False)
    p.add_argument("--at-snr-db", type=float,
                   help="evaluate at this SNR instead of the quantum threshold")
    p.add_argument("--alpha-fit-delta-r-m",
                   help="fit the growth law over start:stop:points meters (log)")
    p.set_defaults(func=cmd_advantage)

    p = sub.add_parser("contour", help="advantage over (range, pulse duration)")
    _add_common(p, prior=False, snr=False)
    p.add_argument("--range-sweep", required=True,
                   help="range grid start:stop:points in meters (log)")
    p.add_argument("--duration-sweep", required=True,
                   help="pulse-duration grid start:stop:points in seconds (log)")
    p.add_argument("--signal-brightness", type=float,
                   help="fixed N_S (default: solved at the quantum threshold)")
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("incoherent-mc",
                       help="Monte-Carlo phase-incoherent Fisher information")
    _add_common(p, prior=False)
    p.add_argument("--n-b", type=float, default=100.0,
                   help="background photons per mode (default 100)")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_incoherent_mc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"radarlimits {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, UnsupportedWaveformError, ResolutionError) as exc:
        print(f"radarlimits {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleScenarioError as exc:
        print(f"radarlimits {args.command}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (NumericsError, RadarLimitsError) as exc:
        print(f"radarlimits {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
