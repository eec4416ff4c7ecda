"""Optimized perturbative expansions for two nonlinear oscillators.

The classical frequency-renormalized perturbation series for the cubic
(Duffing) oscillator and the plane pendulum is accurate only at small
amplitude.  Interpolating the restoring force with an artificial harmonic
term of strength lambda^2 and fixing lambda by stationarity of the
truncated frequency turns the same third-order series into an
approximation that stays within a fraction of a percent of the exact
result over a far wider amplitude range.  This package implements both
expansions in closed form, exact references (elliptic-integral and
quadrature periods, direct integration), and a sweep/reporting CLI.
"""
from .duffing import (
    FrequencyResult,
    HarmonicSeries,
    OscillatorParams,
    PerturbationExpansion,
)
from .errors import (
    ConvergenceError,
    DegeneratePmsError,
    DomainError,
    EstimationError,
    InternalConsistencyError,
    NoStationaryPointError,
    SeparatrixError,
    StepLimitError,
    UnphysicalResultError,
)
from .oracle import Trajectory
from .pendulum import PendulumParams, PendulumTables
from .specfun import QuadratureConfig
from .sweep import ResultTable, SweepSpec

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "OscillatorParams",
    "HarmonicSeries",
    "PerturbationExpansion",
    "FrequencyResult",
    "PendulumParams",
    "PendulumTables",
    "Trajectory",
    "QuadratureConfig",
    "SweepSpec",
    "ResultTable",
    "DomainError",
    "SeparatrixError",
    "DegeneratePmsError",
    "NoStationaryPointError",
    "UnphysicalResultError",
    "ConvergenceError",
    "StepLimitError",
    "EstimationError",
    "InternalConsistencyError",
]
