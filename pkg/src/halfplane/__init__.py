"""Time-dependent diffraction of a modulated plane wave by a Dirichlet half-plane."""

from .errors import (
    ConfigurationError,
    CrossValidationError,
    DomainError,
    ExtrapolationError,
    GeometryError,
    HalfPlaneError,
    JumpLineError,
    PoleProximityError,
    PrecisionError,
)
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .reports import DiagnosticReport
from .scenario import (
    FieldPoint,
    HeavisideProfile,
    SampledProfile,
    ScenarioConfig,
    SmoothRampProfile,
    fourier_laplace,
    make_profile,
    make_scenario,
)
from .timedomain import Component, FieldSample
from .frequency import FrequencyField
from .sommerfeld import StationaryAmplitude
from .lap import LapReport, lap_study
from .diagnostics import run_suite

__version__ = "0.1.0"

__all__ = [
    "Component",
    "ConfigurationError",
    "CrossValidationError",
    "DEFAULT_SPEC",
    "DiagnosticReport",
    "DomainError",
    "ExtrapolationError",
    "FieldPoint",
    "FieldSample",
    "FrequencyField",
    "GeometryError",
    "HalfPlaneError",
    "HeavisideProfile",
    "JumpLineError",
    "LapReport",
    "PoleProximityError",
    "PrecisionError",
    "QuadratureSpec",
    "SampledProfile",
    "ScenarioConfig",
    "SmoothRampProfile",
    "StationaryAmplitude",
    "fourier_laplace",
    "lap_study",
    "make_profile",
    "make_scenario",
    "run_suite",
]
