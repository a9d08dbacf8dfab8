"""Shared value types, errors and integrators."""

from rsvd.core.errors import (
    BadMu,
    BadWHat,
    ConfigError,
    DiscontinuousAngle,
    DomainExit,
    DomainViolation,
    NonGenericSpectrum,
    NonRealTrace,
    OffSlice,
    RSVDError,
    SingularCauchy,
    SingularInput,
    StepTooLarge,
)
from rsvd.core.integrators import rk4_step, step_count, stormer_verlet_step
from rsvd.core.trajectory import Trajectory

__all__ = [
    "BadMu",
    "BadWHat",
    "ConfigError",
    "DiscontinuousAngle",
    "DomainExit",
    "DomainViolation",
    "NonGenericSpectrum",
    "NonRealTrace",
    "OffSlice",
    "RSVDError",
    "SingularCauchy",
    "SingularInput",
    "StepTooLarge",
    "Trajectory",
    "rk4_step",
    "step_count",
    "stormer_verlet_step",
]
