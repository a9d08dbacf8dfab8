"""Canonical integration of reduced Hamiltonians and the two-route experiments."""

from rsvd.dynamics.experiments import (
    DarbouxReport,
    DualityReport,
    darboux_experiment,
    duality_experiment,
    unwrap_angles,
    wrap_angle,
)
from rsvd.dynamics.hamiltonian import (
    CanonicalPoint,
    ReducedHamiltonian,
    canonical_rhs,
    f1_dual_hamiltonian,
    f_action_hamiltonian,
    phi1_hamiltonian,
    split,
)
from rsvd.dynamics.integrate import (
    METHODS,
    ConservationRow,
    RichardsonReport,
    conservation_report,
    integrate_canonical,
    richardson_check,
    time_reversal_error,
)

__all__ = [
    "METHODS",
    "CanonicalPoint",
    "ConservationRow",
    "DarbouxReport",
    "DualityReport",
    "ReducedHamiltonian",
    "RichardsonReport",
    "canonical_rhs",
    "conservation_report",
    "darboux_experiment",
    "duality_experiment",
    "f1_dual_hamiltonian",
    "f_action_hamiltonian",
    "integrate_canonical",
    "phi1_hamiltonian",
    "richardson_check",
    "split",
    "time_reversal_error",
    "unwrap_angles",
    "wrap_angle",
]
