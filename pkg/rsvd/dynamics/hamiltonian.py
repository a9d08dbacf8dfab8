"""
Reduced Hamiltonians packaged for canonical integration.

Every reduced point is a pair (positions, angles) with the bracket
{angle_j, position_l} = delta_jl, so the equations of motion read

    d position / dt = - dH / d angle
    d angle / dt    = + dH / d position
"""

from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional, Union

import numpy as np

from rsvd.core.errors import DomainViolation
from rsvd.models import (
    DualPoint,
    actions_F_red,
    grad_actions_F_red,
    grad_f1_dual,
    grad_phi1_red,
    ham_f1_dual,
    ham_phi1_red,
)
from rsvd.reduction.domain import DomainKind, DomainReport, domain_check
from rsvd.reduction.params import CouplingParams
from rsvd.reduction.points import ReducedPoint

CanonicalPoint = Union[ReducedPoint, DualPoint]
ValueFn = Callable[[np.ndarray, np.ndarray], float]
GradientFn = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class ReducedHamiltonian:
    """A Hamiltonian on (positions, angles) with its analytic gradient.

    Attributes:
        name: Label used in reports and output headers.
        value: Callable (positions, angles) -> H.
        gradient: Callable (positions, angles) -> (dH/dpositions, dH/dangles).
        point_type: ReducedPoint or DualPoint.
        domain: Optional membership test on the positions.
    """

    name: str
    value: ValueFn
    gradient: GradientFn
    point_type: type = ReducedPoint
    domain: Optional[Callable[[np.ndarray], DomainReport]] = None

    def __call__(self, point: CanonicalPoint) -> float:
        positions, angles = split(point)
        return self.value(positions, angles)

    def check(self, positions: np.ndarray) -> None:
        """Raise ``DomainViolation`` when ``positions`` leave the domain."""
        if self.domain is None:
            return
        report = self.domain(positions)
        if not report:
            raise DomainViolation(f"{self.name}: positions {positions.tolist()} violate {report.violation}", report.violation)

    def make_point(self, positions: np.ndarray, angles: np.ndarray) -> CanonicalPoint:
        if self.point_type is DualPoint:
            return DualPoint(phat=positions, qhat=angles)
        return ReducedPoint(lam=positions, theta=angles)


def split(point: CanonicalPoint) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(positions, angles)`` of a reduced or dual point."""
    if isinstance(point, DualPoint):
        return point.phat, point.qhat
    return point.lam, point.theta


def canonical_rhs(
    H: ReducedHamiltonian,
    point: CanonicalPoint,
    orientation: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Velocities ``(d positions/dt, d angles/dt)`` of the canonical flow of ``H``.

    Args:
        H: The Hamiltonian.
        point: Current state.
        orientation: +1 for the physical bracket; -1 reverses the flow.

    Raises:
        DomainViolation: If the state lies outside the domain of ``H``.
    """
    positions, angles = split(point)
    H.check(positions)
    d_positions, d_angles = H.gradient(positions, angles)
    return -orientation * d_angles, orientation * d_positions


def _domain(kind: DomainKind, p: CouplingParams) -> Callable[[np.ndarray], DomainReport]:
    return partial(domain_check, kind, p=p)


def phi1_hamiltonian(p: CouplingParams) -> ReducedHamiltonian:
    return ReducedHamiltonian(
        name="Phi_1",
        value=lambda lam, theta: ham_phi1_red(ReducedPoint(lam, theta), p),
        gradient=lambda lam, theta: grad_phi1_red(ReducedPoint(lam, theta), p),
        domain=_domain("lambda", p),
    )


def f_action_hamiltonian(l: int) -> ReducedHamiltonian:
    """F_l as a function of the actions; its flow is linear in the angles."""
    return ReducedHamiltonian(
        name=f"F_{l}",
        value=lambda lam, theta: actions_F_red(l, lam),
        gradient=lambda lam, theta: (grad_actions_F_red(l, lam), np.zeros_like(theta)),
    )


def f1_dual_hamiltonian(p: CouplingParams) -> ReducedHamiltonian:
    return ReducedHamiltonian(
        name="F_1_dual",
        value=lambda phat, qhat: ham_f1_dual(DualPoint(phat, qhat), p),
        gradient=lambda phat, qhat: grad_f1_dual(DualPoint(phat, qhat), p),
        point_type=DualPoint,
        domain=_domain("phat", p),
    )
