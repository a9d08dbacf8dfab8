"""
Fixed-step canonical integration of reduced Hamiltonians and its diagnostics.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Literal

import numpy as np

from rsvd.core.errors import DomainExit, DomainViolation
from rsvd.core.integrators import rk4_step, step_count, stormer_verlet_step
from rsvd.core.trajectory import Trajectory
from rsvd.dynamics.hamiltonian import CanonicalPoint, ReducedHamiltonian, split

logger = logging.getLogger(__name__)

Method = Literal["rk4", "stormer-split"]
METHODS: tuple[str, ...] = ("rk4", "stormer-split")


def integrate_canonical(
    H: ReducedHamiltonian,
    point0: CanonicalPoint,
    t_end: float,
    dt: float,
    method: Method = "rk4",
    orientation: float = 1.0,
) -> Trajectory[CanonicalPoint]:
    """Integrate the canonical flow of ``H`` with a fixed step.

    Angles are not wrapped so linear flows stay linear in the output.
    The trajectory monitors ``H`` and the domain slack at every step.

    Args:
        H: Hamiltonian with gradient.
        point0: Initial state inside the domain of ``H``.
        t_end: Final time, at least 0.
        dt: Step size.
        method: ``"rk4"`` or ``"stormer-split"``.
        orientation: +1 for the physical flow, -1 for the reversed one.

    Returns:
        One sample per step including the initial state.

    Raises:
        DomainViolation: If the initial state is outside the domain.
        DomainExit: If the state leaves the domain during integration.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    steps = step_count(t_end, dt)
    positions, angles = split(point0)
    n = positions.size
    H.check(positions)

    def sample(pos: np.ndarray, ang: np.ndarray) -> dict[str, float]:
        values = {"H": H.value(pos, ang)}
        if H.domain is not None:
            values["domain_slack"] = H.domain(pos).slack
        return values

    def field(vector: np.ndarray) -> np.ndarray:
        d_positions, d_angles = H.gradient(vector[:n], vector[n:])
        return np.concatenate([-orientation * d_angles, orientation * d_positions])

    # stormer-split treats the angles as coordinates and the positions as momenta
    def d_angle(q: np.ndarray, p: np.ndarray) -> np.ndarray:
        return orientation * H.gradient(p, q)[1]

    def d_position(q: np.ndarray, p: np.ndarray) -> np.ndarray:
        return orientation * H.gradient(p, q)[0]

    trajectory: Trajectory[CanonicalPoint] = Trajectory()
    trajectory.append(0.0, H.make_point(positions.copy(), angles.copy()), **sample(positions, angles))

    vector = np.concatenate([positions, angles])
    for step in range(1, steps + 1):
        time = step * dt
        try:
            if method == "rk4":
                vector = rk4_step(field, vector, dt)
            else:
                q_next, p_next = stormer_verlet_step(d_angle, d_position, vector[n:], vector[:n], dt)
                vector = np.concatenate([p_next, q_next])
            H.check(vector[:n])
            values = sample(vector[:n], vector[n:])
        except DomainViolation as e:
            raise DomainExit(time, e.inequality) from e
        trajectory.append(time, H.make_point(vector[:n].copy(), vector[n:].copy()), **values)

    logger.debug("%s %s flow: %d steps of %.3g", H.name, method, steps, dt)
    return trajectory


@dataclass
class ConservationRow:
    """Drift of one function along a trajectory."""

    name: str
    initial: float
    max_drift: float
    drift_rate: float


def conservation_report(
    trajectory: Trajectory[Any],
    functions: dict[str, Callable[[Any], float]],
) -> list[ConservationRow]:
    """Tabulate ``max |f(state_t) - f(state_0)|`` and its rate per unit time for each function."""
    duration = trajectory.times[-1] - trajectory.times[0] if len(trajectory) else 0.0
    rows = []
    for name, fn in functions.items():
        values = np.array([fn(state) for state in trajectory.states], dtype=float)
        drift = float(np.max(np.abs(values - values[0]))) if values.size else 0.0
        rows.append(
            ConservationRow(
                name=name,
                initial=float(values[0]) if values.size else float("nan"),
                max_drift=drift,
                drift_rate=drift / duration if duration > 0 else 0.0,
            )
        )
    return rows


def time_reversal_error(
    H: ReducedHamiltonian,
    point0: CanonicalPoint,
    t_end: float,
    dt: float,
    method: Method = "rk4",
) -> float:
    """Integrate to ``t_end`` and back; return the max-norm distance to the start."""
    forward = integrate_canonical(H, point0, t_end, dt, method)
    backward = integrate_canonical(H, forward.final, t_end, dt, method, orientation=-1.0)
    start = np.concatenate(split(point0))
    end = np.concatenate(split(backward.final))
    return float(np.max(np.abs(end - start)))


@dataclass
class RichardsonReport:
    """Step-halving study of one integrator.

    Attributes:
        dts: The step sizes dt, dt/2, dt/4.
        state_differences: Max-norm differences of the final states at
            consecutive step sizes.
        state_order: Observed order from the ratio of the differences.
        energy_drifts: Max |H - H_0| at each step size.
    """

    dts: list[float]
    state_differences: list[float]
    state_order: float
    energy_drifts: list[float] = field(default_factory=list)

    @property
    def energy_order(self) -> float:
        """Observed order of the energy drift between the two coarsest steps."""
        coarse, fine = self.energy_drifts[0], self.energy_drifts[1]
        if coarse <= 0 or fine <= 0:
            return float("nan")
        return float(np.log2(coarse / fine))


def richardson_check(
    H: ReducedHamiltonian,
    point0: CanonicalPoint,
    t_end: float,
    dt: float,
    method: Method = "rk4",
) -> RichardsonReport:
    """Estimate the convergence order of ``method`` on ``H`` by halving ``dt`` twice."""
    dts = [dt, dt / 2, dt / 4]
    finals = []
    drifts = []
    for step in dts:
        trajectory = integrate_canonical(H, point0, t_end, step, method)
        finals.append(np.concatenate(split(trajectory.final)))
        energy = trajectory.monitor("H")
        drifts.append(float(np.max(np.abs(energy - energy[0]))))

    differences = [
        float(np.max(np.abs(finals[0] - finals[1]))),
        float(np.max(np.abs(finals[1] - finals[2]))),
    ]
    if differences[1] > 0:
        order = float(np.log2(differences[0] / differences[1]))
    else:
        order = float("nan")
    logger.debug("Richardson %s on %s: order %.3f", method, H.name, order)
    return RichardsonReport(dts=dts, state_differences=differences, state_order=order, energy_drifts=drifts)
