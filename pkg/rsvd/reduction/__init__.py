"""Constraint surface, gauge fixing and the reduced coordinates (lambda, theta)."""

from rsvd.reduction.constraints import (
    constraint_residual,
    main_constraint_residual,
    surface_blocks,
    surface_residual,
)
from rsvd.reduction.domain import (
    DomainReport,
    domain_check,
    make_rng,
    require_domain,
    sample_domain,
)
from rsvd.reduction.frame import SpectralFrame, spectral_frame
from rsvd.reduction.moduli import (
    cauchy_system,
    moduli_closed_form,
    moduli_oracle,
    moduli_split_form,
)
from rsvd.reduction.params import CouplingParams, build_params
from rsvd.reduction.points import (
    ReducedPoint,
    extract_invariants,
    gauge_vector,
    reconstruct_point,
)

__all__ = [
    "CouplingParams",
    "DomainReport",
    "ReducedPoint",
    "SpectralFrame",
    "build_params",
    "cauchy_system",
    "constraint_residual",
    "domain_check",
    "extract_invariants",
    "gauge_vector",
    "main_constraint_residual",
    "make_rng",
    "moduli_closed_form",
    "moduli_oracle",
    "moduli_split_form",
    "reconstruct_point",
    "require_domain",
    "sample_domain",
    "spectral_frame",
    "surface_blocks",
    "surface_residual",
]
