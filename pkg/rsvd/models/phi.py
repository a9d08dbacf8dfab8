"""Reduced Hamiltonians in the coordinates (lambda, theta).

Phi_1 is an RSvD-type Hamiltonian with hyperbolic interactions; the F_l
are functions of lambda alone.
"""

import numpy as np
from numpy.typing import ArrayLike

from rsvd.core.errors import DomainViolation
from rsvd.reduction.params import CouplingParams
from rsvd.reduction.points import ReducedPoint


def sqrt_factor(radicand: np.ndarray, label: str) -> np.ndarray:
    """Positive square root; boundary zeros are exact, negatives raise."""
    if np.any(radicand < 0):
        index = np.unravel_index(int(np.argmin(radicand)), np.shape(radicand))
        raise DomainViolation(
            f"negative radicand {float(np.min(radicand)):.3e} in {label} at index {tuple(int(i) for i in index)}",
            inequality=f"{label} >= 0",
        )
    return np.sqrt(radicand)


def log_derivative(z: np.ndarray, c: float) -> np.ndarray:
    """d/dz log(1 - c / sinh^2 z)."""
    sh = np.sinh(z)
    return 2.0 * c * np.cosh(z) / (sh * (sh**2 - c))


def product_minus_one(terms: np.ndarray) -> float:
    """Evaluate prod(1 + a_k) - 1 without cancellation for small a_k."""
    result = 0.0
    for a in terms:
        result = result * (1.0 + a) + a
    return float(result)


def potential(lam: ArrayLike, p: CouplingParams) -> float:
    """The potential V(lambda) of Phi_1 including its additive constant.

    The constant makes V vanish in the rational limit at ``uv = 0``; it is
    folded into the two products so that ``V`` stays accurate for small
    couplings.
    """
    lam_arr = np.asarray(lam, dtype=float)
    s2 = np.sinh(p.mu) ** 2
    minus = product_minus_one(-s2 / np.sinh(lam_arr) ** 2)
    plus = product_minus_one(s2 / np.cosh(lam_arr) ** 2)
    coupling = np.exp(p.v - p.u)
    return float(
        p.n
        + coupling
        * (np.sinh(p.v) * np.sinh(p.u) * minus - np.cosh(p.v) * np.cosh(p.u) * plus)
        / s2
    )


def potential_gradient(lam: ArrayLike, p: CouplingParams) -> np.ndarray:
    lam_arr = np.asarray(lam, dtype=float)
    s2 = np.sinh(p.mu) ** 2
    sh, ch = np.sinh(lam_arr), np.cosh(lam_arr)
    minus = 1.0 - s2 / sh**2
    plus = 1.0 + s2 / ch**2

    grad = np.empty_like(lam_arr)
    for i in range(lam_arr.size):
        others = np.arange(lam_arr.size) != i
        grad[i] = (
            np.sinh(p.v) * np.sinh(p.u) * np.prod(minus[others]) * 2.0 * ch[i] / sh[i] ** 3
            + np.cosh(p.v) * np.cosh(p.u) * np.prod(plus[others]) * 2.0 * sh[i] / ch[i] ** 3
        )
    return np.exp(p.v - p.u) * grad


def kinetic_amplitudes(lam: ArrayLike, p: CouplingParams) -> np.ndarray:
    """The coefficients f_k(lambda) of cos(theta_k) in Phi_1."""
    lam_arr = np.asarray(lam, dtype=float)
    n = lam_arr.size
    sh2 = np.sinh(lam_arr) ** 2
    s2 = np.sinh(p.mu) ** 2

    external = sqrt_factor(1.0 - np.sinh(p.v) ** 2 / sh2, "1 - sinh^2 v / sinh^2 lambda") * sqrt_factor(
        1.0 - np.sinh(p.u) ** 2 / sh2, "1 - sinh^2 u / sinh^2 lambda"
    )

    pair = np.ones((n, n))
    off = ~np.eye(n, dtype=bool)
    diff = (lam_arr[:, None] - lam_arr[None, :])[off]
    total = (lam_arr[:, None] + lam_arr[None, :])[off]
    pair[off] = sqrt_factor(1.0 - s2 / np.sinh(diff) ** 2, "1 - sinh^2 mu / sinh^2(lambda_k - lambda_l)") * sqrt_factor(
        1.0 - s2 / np.sinh(total) ** 2, "1 - sinh^2 mu / sinh^2(lambda_k + lambda_l)"
    )

    return np.exp(p.v - p.u) / np.cosh(lam_arr) ** 2 * external * np.prod(pair, axis=1)


def ham_phi1_red(rp: ReducedPoint, p: CouplingParams) -> float:
    """Reduced Hamiltonian ``Phi_1 = V(lambda) + sum_k f_k(lambda) cos(theta_k)``.

    Raises:
        DomainViolation: If a square-root radicand is negative.
    """
    return potential(rp.lam, p) + float(np.dot(np.cos(rp.theta), kinetic_amplitudes(rp.lam, p)))


def grad_phi1_red(rp: ReducedPoint, p: CouplingParams) -> tuple[np.ndarray, np.ndarray]:
    """Analytic partial derivatives ``(dH/dlambda, dH/dtheta)`` of :func:`ham_phi1_red`."""
    lam = rp.lam
    n = lam.size
    amplitudes = kinetic_amplitudes(lam, p)
    weights = np.cos(rp.theta) * amplitudes
    s2 = np.sinh(p.mu) ** 2

    # jacobian[k, i] = d log f_k / d lambda_i
    jacobian = np.zeros((n, n))
    diagonal = (
        -2.0 * np.tanh(lam)
        + 0.5 * log_derivative(lam, np.sinh(p.v) ** 2)
        + 0.5 * log_derivative(lam, np.sinh(p.u) ** 2)
    )
    for k in range(n):
        for i in range(n):
            if i == k:
                continue
            minus = log_derivative(np.array(lam[k] - lam[i]), s2)
            plus = log_derivative(np.array(lam[k] + lam[i]), s2)
            diagonal[k] += 0.5 * (minus + plus)
            jacobian[k, i] = 0.5 * (plus - minus)
    jacobian[np.diag_indices(n)] = diagonal

    d_lambda = potential_gradient(lam, p) + weights @ jacobian
    d_theta = -np.sin(rp.theta) * amplitudes
    return d_lambda, d_theta


def actions_F_red(l: int, lam: ArrayLike) -> float:
    """``F_l = (1/l) sum_j cosh(2 l lambda_j)``."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    return float(np.sum(np.cosh(2 * l * np.asarray(lam, dtype=float))) / l)


def grad_actions_F_red(l: int, lam: ArrayLike) -> np.ndarray:
    return 2.0 * np.sinh(2 * l * np.asarray(lam, dtype=float))
