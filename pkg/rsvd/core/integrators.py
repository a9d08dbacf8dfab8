"""
Fixed-step integrators on flat numpy state vectors.

The flows in this package are smooth and only short horizons are needed,
so plain fixed-step schemes are used throughout.
"""

from typing import Callable

import numpy as np

VectorField = Callable[[np.ndarray], np.ndarray]


def rk4_step(field: VectorField, state: np.ndarray, dt: float) -> np.ndarray:
    """Advance an autonomous system by one classical Runge-Kutta step."""
    k1 = field(state)
    k2 = field(state + 0.5 * dt * k1)
    k3 = field(state + 0.5 * dt * k2)
    k4 = field(state + dt * k3)
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def stormer_verlet_step(
    dq: Callable[[np.ndarray, np.ndarray], np.ndarray],
    dp: Callable[[np.ndarray, np.ndarray], np.ndarray],
    q: np.ndarray,
    p: np.ndarray,
    dt: float,
    tol: float = 1e-14,
    max_iter: int = 100,
) -> tuple[np.ndarray, np.ndarray]:
    """One generalized Stormer-Verlet step for a non-separable Hamiltonian.

    Uses q' = dH/dp, p' = -dH/dq. The two implicit stages are solved by
    fixed-point iteration.

    Args:
        dq: Callable (q, p) -> dH/dq
        dp: Callable (q, p) -> dH/dp
        q: Positions
        p: Momenta
        dt: Step size
        tol: Fixed-point tolerance (max-norm)
        max_iter: Iteration cap per stage

    Returns:
        Tuple of (q_next, p_next)
    """
    half = 0.5 * dt

    p_half = p.copy()
    for _ in range(max_iter):
        updated = p - half * dq(q, p_half)
        if np.max(np.abs(updated - p_half)) < tol:
            p_half = updated
            break
        p_half = updated

    drift = dp(q, p_half)
    q_next = q + dt * drift
    for _ in range(max_iter):
        updated = q + half * (drift + dp(q_next, p_half))
        if np.max(np.abs(updated - q_next)) < tol:
            q_next = updated
            break
        q_next = updated

    p_next = p_half - half * dq(q_next, p_half)
    return q_next, p_next


def step_count(t_end: float, dt: float) -> int:
    """Number of fixed steps covering [0, t_end]; the last step is not shortened."""
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end < 0:
        raise ValueError(f"t_end must be non-negative, got {t_end}")
    return int(round(t_end / dt))
