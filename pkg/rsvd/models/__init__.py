"""Closed-form reduced Hamiltonians on both sides of the duality."""

from rsvd.models.dual import (
    DualPoint,
    actions_phi_dual,
    dual_potential,
    grad_f1_dual,
    ham_f1_dual,
    u1_polynomial,
    u1_sinh,
)
from rsvd.models.phi import (
    actions_F_red,
    grad_actions_F_red,
    grad_phi1_red,
    ham_phi1_red,
    kinetic_amplitudes,
    potential,
    potential_gradient,
)
from rsvd.models.rational import ham_rational, potential_rational

__all__ = [
    "DualPoint",
    "actions_F_red",
    "actions_phi_dual",
    "dual_potential",
    "grad_actions_F_red",
    "grad_f1_dual",
    "grad_phi1_red",
    "ham_f1_dual",
    "ham_phi1_red",
    "ham_rational",
    "kinetic_amplitudes",
    "potential",
    "potential_gradient",
    "potential_rational",
    "u1_polynomial",
    "u1_sinh",
]
