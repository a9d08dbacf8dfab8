"""Coupling parameters of the reduction and the constant data derived from them."""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from rsvd.core.errors import BadMu

logger = logging.getLogger(__name__)

DET_SIGMA_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class CouplingParams:
    """The three couplings (u, v, mu) plus the moment-map data they fix.

    Attributes:
        n: Number of particles; the group is SL(2n, C).
        u: Coupling entering the left boundary through y = exp(-u).
        v: Coupling entering the right boundary through x = exp(-v).
        mu: Interaction coupling, strictly positive.
        v_hat: Vector in C^n with |v_hat|^2 = alpha^2 (alpha^(-2n) - 1).
        sigma: Upper triangular with positive diagonal, sigma sigma^dagger =
            alpha^2 1 + v_hat v_hat^dagger and det sigma = 1.
    """

    n: int
    u: float
    v: float
    mu: float
    v_hat: np.ndarray = field(repr=False)
    sigma: np.ndarray = field(repr=False)

    @property
    def x(self) -> float:
        return float(np.exp(-self.v))

    @property
    def y(self) -> float:
        return float(np.exp(-self.u))

    @property
    def alpha(self) -> float:
        return float(np.exp(-self.mu))

    @property
    def dimension(self) -> int:
        return 2 * self.n

    @property
    def w_hat(self) -> np.ndarray:
        """Fixed vector (v_hat, 0) of the master-space constraint."""
        return np.concatenate([self.v_hat, np.zeros(self.n, dtype=complex)])

    def scaled(self, r: float) -> "CouplingParams":
        """Return the parameters with every coupling multiplied by ``r``.

        The direction of ``v_hat`` is kept; its norm is recomputed for the
        scaled ``mu``.
        """
        return build_params(self.n, r * self.u, r * self.v, r * self.mu, direction=self.v_hat)


def _upper_cholesky(matrix: np.ndarray) -> np.ndarray:
    """Upper triangular factor ``s`` with ``s s^dagger = matrix``."""
    exchange = np.eye(matrix.shape[0])[::-1]
    lower = np.linalg.cholesky(exchange @ matrix @ exchange)
    return exchange @ lower @ exchange


def build_params(
    n: int,
    u: float,
    v: float,
    mu: float,
    direction: Optional[ArrayLike] = None,
) -> CouplingParams:
    """Validate the couplings and derive ``v_hat`` and ``sigma``.

    Args:
        n: Number of particles, at least 1.
        u: Left coupling.
        v: Right coupling.
        mu: Interaction coupling.
        direction: Direction of ``v_hat`` in C^n. Defaults to the first basis
            vector; only the direction is used.

    Returns:
        The assembled parameters.

    Raises:
        BadMu: If ``mu`` is not strictly positive.
        ValueError: If ``n`` < 1, a coupling is not finite or the direction is zero.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if not all(np.isfinite([u, v, mu])):
        raise ValueError(f"couplings must be finite, got u={u}, v={v}, mu={mu}")
    if mu <= 0:
        raise BadMu(f"mu must be strictly positive, got {mu}")

    if direction is None:
        unit = np.zeros(n, dtype=complex)
        unit[0] = 1.0
    else:
        unit = np.asarray(direction, dtype=complex).reshape(-1)
        if unit.shape != (n,):
            raise ValueError(f"direction must have length {n}, got {unit.shape[0]}")
        norm = np.linalg.norm(unit)
        if norm == 0:
            raise ValueError("direction of v_hat must be non-zero")
        unit = unit / norm

    alpha = np.exp(-mu)
    # expm1 keeps |v_hat| accurate for small mu
    radius = alpha * np.sqrt(np.expm1(2 * n * mu))
    v_hat = radius * unit

    gram = alpha**2 * np.eye(n, dtype=complex) + np.outer(v_hat, v_hat.conj())
    sigma = _upper_cholesky(gram)

    det_sigma = np.linalg.det(sigma)
    if abs(det_sigma - 1.0) > DET_SIGMA_TOLERANCE:
        raise ArithmeticError(f"det sigma = {det_sigma} differs from 1")

    logger.debug("Built parameters n=%d u=%g v=%g mu=%g |v_hat|=%g", n, u, v, mu, radius)
    return CouplingParams(n=n, u=float(u), v=float(v), mu=float(mu), v_hat=v_hat, sigma=sigma)
