"""
Free Hamiltonians F_l, Phi_l and their flows on the triple (L, Omega, w).
"""

import logging
from typing import Callable, Literal, Optional

import numpy as np
from scipy.linalg import eigh

from rsvd.core.errors import NonRealTrace, StepTooLarge
from rsvd.core.integrators import rk4_step, step_count
from rsvd.core.trajectory import Trajectory
from rsvd.matgroup.types import ObservableTriple, TripleTangent, involution

logger = logging.getLogger(__name__)

Family = Literal["F", "Phi"]
TripleMonitor = Callable[[ObservableTriple], float]

IMAG_TRACE_TOLERANCE = 1e-8
DEFAULT_DRIFT_TOLERANCE = 1e-6


def _check_order(l: int) -> None:
    if l < 1:
        raise ValueError(f"Hamiltonian index l must be >= 1, got {l}")


def free_hamiltonian(family: Family, l: int, triple: ObservableTriple) -> float:
    """Evaluate F_l = tr(Omega^l) / 2l or Phi_l = tr(L^l) / 2l.

    Raises:
        NonRealTrace: If the trace has an imaginary part above 1e-8
    """
    _check_order(l)
    matrix = triple.Omega if family == "F" else triple.L
    trace = np.trace(np.linalg.matrix_power(matrix, l))
    if abs(trace.imag) > IMAG_TRACE_TOLERANCE:
        raise NonRealTrace(f"Im tr = {trace.imag:.3e} for {family}_{l}")
    return float(trace.real) / (2 * l)


def triple_vector_field(family: Family, l: int, triple: ObservableTriple) -> TripleTangent:
    """Hamiltonian vector field of F_l or Phi_l projected to (L, Omega, w)."""
    _check_order(l)
    n = triple.n
    inv = involution(n)
    ident = np.eye(2 * n)
    omega, big_l, w = triple.Omega, triple.L, triple.w

    if family == "F":
        omega_l = np.linalg.matrix_power(omega, l)
        nu = np.trace(omega_l).real / (2 * n)
        li = big_l @ inv
        li_dot = li @ (1j * omega_l) - (1j * omega_l) @ li
        return TripleTangent(
            L=li_dot @ inv,
            Omega=np.zeros_like(omega),
            w=-1j * (omega_l - nu * ident) @ w,
        )

    l_prev = np.linalg.matrix_power(big_l, l - 1)
    l_cur = l_prev @ big_l
    l_next = l_cur @ big_l
    generator = 2 * l_cur - l_prev - l_next
    upper = ident + inv
    lower = ident - inv
    return TripleTangent(
        L=0.5j * (generator @ inv - inv @ generator),
        Omega=0.5j * (upper @ l_cur @ lower @ omega + omega @ lower @ l_cur @ upper),
        w=0.5j * upper @ (l_cur - l_prev) @ w,
    )


def exact_F_flow(triple: ObservableTriple, l: int, time: float) -> ObservableTriple:
    """Closed-form flow of F_l: Omega fixed, w and L I conjugated by exp(-it(Omega^l - nu)).

    The propagator is built from the eigendecomposition of the Hermitian
    generator, so it is unitary to rounding.
    """
    _check_order(l)
    n = triple.n
    inv = involution(n)
    omega_l = np.linalg.matrix_power(triple.Omega, l)
    generator = omega_l - (np.trace(omega_l).real / (2 * n)) * np.eye(2 * n)
    generator = 0.5 * (generator + generator.conj().T)

    eigenvalues, vectors = eigh(generator)
    propagator = (vectors * np.exp(-1j * time * eigenvalues)) @ vectors.conj().T

    li = propagator @ triple.L @ inv @ propagator.conj().T
    return ObservableTriple(
        Omega=triple.Omega.copy(),
        L=li @ inv,
        w=propagator @ triple.w,
    )


def integrate_Phi_flow(
    triple: ObservableTriple,
    l: int,
    t_end: float,
    dt: float,
    drift_tolerance: Optional[float] = DEFAULT_DRIFT_TOLERANCE,
    monitors: Optional[dict[str, TripleMonitor]] = None,
) -> Trajectory[ObservableTriple]:
    """Integrate the Phi_l flow on triples with fixed-step RK4.

    Monitored every step: Phi_1..Phi_3, det Omega, |L I w - w|, plus any
    caller-supplied monitors.

    Args:
        triple: Initial triple
        l: Hamiltonian index
        t_end: Final time (>= 0)
        dt: Step size (> 0)
        drift_tolerance: Raise StepTooLarge when a conserved quantity drifts
            beyond this; None disables the check
        monitors: Extra named scalar functions of the triple

    Raises:
        StepTooLarge: On excessive conservation drift
    """
    _check_order(l)
    n = triple.n
    steps = step_count(t_end, dt)
    extra = dict(monitors or {})

    def sample(state: ObservableTriple) -> dict[str, float]:
        values = {f"Phi_{m}": free_hamiltonian("Phi", m, state) for m in (1, 2, 3)}
        values["det_Omega"] = float(np.linalg.det(state.Omega).real)
        values["fixed_vector"] = state.fixed_vector_error()
        for name, fn in extra.items():
            values[name] = fn(state)
        return values

    def field(vector: np.ndarray) -> np.ndarray:
        return triple_vector_field("Phi", l, ObservableTriple.unpack(vector, n)).pack()

    trajectory: Trajectory[ObservableTriple] = Trajectory()
    trajectory.append(0.0, triple, **sample(triple))

    vector = triple.pack()
    for step in range(1, steps + 1):
        vector = rk4_step(field, vector, dt)
        state = ObservableTriple.unpack(vector.copy(), n)
        trajectory.append(step * dt, state, **sample(state))

    logger.debug("Phi_%d flow: %d steps of %.3g", l, steps, dt)

    if drift_tolerance is not None:
        for name in ("Phi_1", "Phi_2", "Phi_3", "det_Omega"):
            series = trajectory.monitor(name)
            drift = float(np.max(np.abs(series - series[0])))
            if drift > drift_tolerance:
                raise StepTooLarge(f"{name} drifted by {drift:.3e} with dt={dt}", drift)

    return trajectory
