"""The spectral frame rho diagonalizing the slice form of Omega."""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from rsvd.core.errors import DomainViolation, NonGenericSpectrum
from rsvd.reduction.params import CouplingParams

logger = logging.getLogger(__name__)

DEGENERACY_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralFrame:
    """Eigen-data of Omega on the slice.

    Attributes:
        Lambda: Strictly decreasing eigenvalues above max(x^2, x^-2).
        beta: Singular values of the off-diagonal block of b.
        Gamma: Cosine-like frame entries.
        Sigma: Sine-like frame entries, Gamma^2 + Sigma^2 = 1.
        rho: Real symmetric orthogonal 2n x 2n matrix.
    """

    Lambda: np.ndarray
    beta: np.ndarray
    Gamma: np.ndarray
    Sigma: np.ndarray
    rho: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return int(self.Lambda.shape[0])

    @property
    def Lambda_full(self) -> np.ndarray:
        """All 2n eigenvalues ``(Lambda, Lambda^-1)``."""
        return np.concatenate([self.Lambda, 1.0 / self.Lambda])

    def slice_omega(self, x: float) -> np.ndarray:
        """Omega in slice form ``[[x^2 + beta^2, beta/x], [beta/x, x^-2]]``."""
        beta = np.diag(self.beta)
        identity = np.eye(self.n)
        return np.block([
            [x**2 * identity + beta @ beta, beta / x],
            [beta / x, identity / x**2],
        ]).astype(complex)


def _check_strictly_decreasing(values: np.ndarray, name: str) -> None:
    if values.ndim != 1 or values.size == 0:
        raise ValueError(f"{name} must be a non-empty vector")
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{name} must be finite")
    gaps = values[:-1] - values[1:]
    if np.any(gaps <= DEGENERACY_TOLERANCE):
        index = int(np.argmin(gaps))
        raise NonGenericSpectrum(
            f"{name} must be strictly decreasing with gaps above {DEGENERACY_TOLERANCE:g}; "
            f"{name}[{index}] - {name}[{index + 1}] = {gaps[index]:.3e}"
        )


def spectral_frame(
    p: CouplingParams,
    *,
    beta: Optional[ArrayLike] = None,
    Lambda: Optional[ArrayLike] = None,
) -> SpectralFrame:
    """Build the frame from either the singular values ``beta`` or the eigenvalues ``Lambda``.

    The inverse map solves ``Lambda + Lambda^-1 = beta^2 + x^2 + x^-2`` on
    the root above ``max(x^2, x^-2)``.

    Args:
        p: Coupling parameters; only ``x`` enters.
        beta: Strictly decreasing positive singular values.
        Lambda: Strictly decreasing eigenvalues with ``Lambda_n > max(x^2, x^-2)``.

    Returns:
        The assembled frame.

    Raises:
        NonGenericSpectrum: If consecutive entries lie within 1e-9.
        DomainViolation: If the smallest eigenvalue is not above the threshold.
        ValueError: If neither or both inputs are given.
    """
    if (beta is None) == (Lambda is None):
        raise ValueError("exactly one of beta and Lambda must be given")

    x2 = p.x**2
    threshold = max(x2, 1.0 / x2)

    if beta is not None:
        beta_arr = np.asarray(beta, dtype=float).reshape(-1)
        _check_strictly_decreasing(beta_arr, "beta")
        if beta_arr[-1] <= DEGENERACY_TOLERANCE:
            raise NonGenericSpectrum(f"beta must be positive, smallest is {beta_arr[-1]:.3e}")
        s = beta_arr**2 + x2 + 1.0 / x2
        lam = (s + np.sqrt(s**2 - 4.0)) / 2.0
    else:
        lam = np.asarray(Lambda, dtype=float).reshape(-1)
        _check_strictly_decreasing(lam, "Lambda")
        if lam[-1] <= threshold:
            raise DomainViolation(
                f"Lambda_n = {lam[-1]:.6g} must exceed max(x^2, x^-2) = {threshold:.6g}",
                inequality="Lambda_n > max(x^2, x^-2)",
            )
        beta_arr = np.sqrt(lam + 1.0 / lam - x2 - 1.0 / x2)

    spread = lam - 1.0 / lam
    gamma = np.sqrt((lam - 1.0 / x2) / spread)
    sigma = np.sqrt((1.0 / x2 - 1.0 / lam) / spread)

    rho = np.block([
        [np.diag(gamma), np.diag(sigma)],
        [np.diag(sigma), -np.diag(gamma)],
    ])
    return SpectralFrame(Lambda=lam, beta=beta_arr, Gamma=gamma, Sigma=sigma, rho=rho)
