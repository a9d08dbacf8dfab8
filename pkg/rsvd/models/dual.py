"""Dual side: Hamiltonians in the action-angle variables (phat, qhat) of the Phi_l."""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev
from numpy.typing import ArrayLike

from rsvd.core.errors import DomainViolation
from rsvd.models.phi import log_derivative, sqrt_factor
from rsvd.reduction.params import CouplingParams


@dataclass(frozen=True, eq=False)
class DualPoint:
    """Dual canonical pair; ``qhat`` are angles."""

    phat: np.ndarray
    qhat: np.ndarray

    def __post_init__(self) -> None:
        phat = np.asarray(self.phat, dtype=float).reshape(-1)
        qhat = np.asarray(self.qhat, dtype=float).reshape(-1)
        if phat.shape != qhat.shape:
            raise ValueError(f"phat and qhat lengths differ: {phat.size} != {qhat.size}")
        object.__setattr__(self, "phat", phat)
        object.__setattr__(self, "qhat", qhat)

    @property
    def n(self) -> int:
        return int(self.phat.size)

    def pack(self) -> np.ndarray:
        return np.concatenate([self.phat, self.qhat])

    @classmethod
    def unpack(cls, vector: ArrayLike) -> "DualPoint":
        values = np.asarray(vector, dtype=float)
        n = values.size // 2
        return cls(phat=values[:n], qhat=values[n:])


def u1_polynomial(phat: ArrayLike, p: CouplingParams) -> np.ndarray:
    """``U_1(p) = 1 - (1 + e^{2(v-u)}) e^{-2p} + e^{2(v-u)} e^{-4p}``."""
    e = np.exp(-2 * np.asarray(phat, dtype=float))
    shift = np.exp(2 * (p.v - p.u))
    return 1.0 - (1.0 + shift) * e + shift * e**2


def u1_sinh(phat: ArrayLike, p: CouplingParams) -> np.ndarray:
    """``U_1`` as ``4 e^{v-u} e^{-2p} sinh(p) sinh(p + u - v)``."""
    values = np.asarray(phat, dtype=float)
    return 4.0 * np.exp(p.v - p.u) * np.exp(-2 * values) * np.sinh(values) * np.sinh(values + p.u - p.v)


def dual_potential(phat: ArrayLike, p: CouplingParams) -> float:
    return float(0.5 * (np.exp(-2 * p.u) + np.exp(2 * p.v)) * np.sum(np.exp(-2 * np.asarray(phat, dtype=float))))


def _amplitudes(phat: np.ndarray, p: CouplingParams) -> np.ndarray:
    n = phat.size
    s2 = np.sinh(p.mu) ** 2
    external = sqrt_factor(u1_sinh(phat, p), "U_1(phat)")
    pair = np.ones((n, n))
    off = ~np.eye(n, dtype=bool)
    diff = (phat[:, None] - phat[None, :])[off]
    pair[off] = sqrt_factor(1.0 - s2 / np.sinh(diff) ** 2, "1 - sinh^2 mu / sinh^2(phat_j - phat_k)")
    return external * np.prod(pair, axis=1)


def ham_f1_dual(dp: DualPoint, p: CouplingParams) -> float:
    """``F_1 = U(phat) - sum_j cos(qhat_j) U_1(phat_j)^(1/2) prod_k (...)^(1/2)``.

    Raises:
        DomainViolation: If a square-root radicand is negative.
    """
    return dual_potential(dp.phat, p) - float(np.dot(np.cos(dp.qhat), _amplitudes(dp.phat, p)))


def grad_f1_dual(dp: DualPoint, p: CouplingParams) -> tuple[np.ndarray, np.ndarray]:
    """Analytic partials ``(dH/dphat, dH/dqhat)`` of :func:`ham_f1_dual`."""
    phat = dp.phat
    n = phat.size
    amplitudes = _amplitudes(phat, p)
    weights = np.cos(dp.qhat) * amplitudes
    s2 = np.sinh(p.mu) ** 2

    # U_1 is a product of sinh factors, so its log-derivative is a sum of coth terms
    jacobian = np.zeros((n, n))
    diagonal = 0.5 * (-2.0 + 1.0 / np.tanh(phat) + 1.0 / np.tanh(phat + p.u - p.v))
    for j in range(n):
        for k in range(n):
            if k == j:
                continue
            term = 0.5 * log_derivative(np.array(phat[j] - phat[k]), s2)
            diagonal[j] += term
            jacobian[j, k] = -term
    jacobian[np.diag_indices(n)] = diagonal

    d_potential = -(np.exp(-2 * p.u) + np.exp(2 * p.v)) * np.exp(-2 * phat)
    d_phat = d_potential - weights @ jacobian
    d_qhat = np.sin(dp.qhat) * amplitudes
    return d_phat, d_qhat


def actions_phi_dual(l: int, phat: ArrayLike) -> float:
    """``Phi_l = (1/l) sum_j cos(2 l q_j)`` with ``sin q_j = exp(phat_j)``.

    Uses ``cos(2 l q) = T_l(1 - 2 e^{2 phat})``.

    Raises:
        DomainViolation: If some ``exp(phat_j) > 1``.
    """
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    values = np.asarray(phat, dtype=float)
    if np.any(values > 0):
        raise DomainViolation(f"exp(phat) must not exceed 1, got phat={values.tolist()}", inequality="phat_j <= 0")
    coefficients = np.zeros(l + 1)
    coefficients[l] = 1.0
    return float(np.sum(chebyshev.chebval(1.0 - 2.0 * np.exp(2 * values), coefficients)) / l)
