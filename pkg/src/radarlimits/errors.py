"""Exception types shared across the package.

The CLI maps these onto its exit codes: usage problems are handled by
argparse (exit 2), ``NumericsError`` maps to exit 3, and
``InfeasibleScenarioError`` to exit 4.
"""


class RadarLimitsError(Exception):
    """Base class for all package errors."""


class DomainError(RadarLimitsError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedWaveformError(RadarLimitsError, TypeError):
    """The requested quantity is undefined for this waveform variant."""


class ResolutionError(RadarLimitsError, ValueError):
    """A tabulated grid is too coarse to resolve the requested quantity."""


class NumericsError(RadarLimitsError, RuntimeError):
    """A numerical routine failed to converge; carries diagnostics."""


class InfeasibleScenarioError(RadarLimitsError, ValueError):
    """The physical scenario violates a model assumption (e.g. kappa >= 1,
    or a delay uncertainty too small to exhibit a threshold)."""
