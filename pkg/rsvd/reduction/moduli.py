"""The moduli |w~_a|^2 fixed by the constraints.

Three evaluations are provided: a dense solve of the Cauchy-like linear
system, its closed-form inverse, and the equivalent sinh product form in
the variables lambda.
"""

import logging

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from rsvd.core.errors import DomainViolation, NonGenericSpectrum, SingularCauchy
from rsvd.reduction.params import CouplingParams

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12
CONDITION_WARNING = 1e8
DISTINCT_TOLERANCE = 1e-9


def _check_full_spectrum(Lambda_full: ArrayLike, p: CouplingParams) -> np.ndarray:
    lam = np.asarray(Lambda_full, dtype=float).reshape(-1)
    if lam.shape != (2 * p.n,):
        raise ValueError(f"Lambda_full must have length {2 * p.n}, got {lam.shape[0]}")
    diffs = np.abs(lam[:, None] - lam[None, :])
    np.fill_diagonal(diffs, np.inf)
    if np.min(diffs) <= DISTINCT_TOLERANCE:
        raise NonGenericSpectrum("entries of Lambda_full must be pairwise distinct")
    return lam


def cauchy_system(Lambda_full: ArrayLike, p: CouplingParams) -> tuple[np.ndarray, np.ndarray]:
    """Matrix ``1/(Lambda_a Lambda_b - alpha^2)`` and right-hand side of the moduli system."""
    lam = _check_full_spectrum(Lambda_full, p)
    alpha2 = p.alpha**2
    denominators = np.outer(lam, lam) - alpha2
    if np.min(np.abs(denominators)) == 0.0:
        raise SingularCauchy("Lambda_a Lambda_b = alpha^2 for some pair")
    matrix = 1.0 / denominators
    rhs = (p.y**2 * lam - alpha2) / (lam**2 - alpha2)
    return matrix, rhs


def moduli_oracle(Lambda_full: ArrayLike, p: CouplingParams) -> np.ndarray:
    """Solve the Cauchy-like system for the moduli by a dense linear solve.

    The system is equilibrated symmetrically by the inverse square roots of
    its diagonal before solving, followed by one step of iterative refinement.

    Raises:
        SingularCauchy: If the equilibrated matrix has condition number above 1e12.
    """
    matrix, rhs = cauchy_system(Lambda_full, p)

    scale = 1.0 / np.sqrt(np.abs(np.diag(matrix)))
    scaled = matrix * np.outer(scale, scale)
    condition = np.linalg.cond(scaled)
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise SingularCauchy(f"Cauchy system condition number {condition:.3e} exceeds {CONDITION_LIMIT:g}")
    if condition > CONDITION_WARNING:
        logger.warning("Cauchy system is poorly conditioned (cond=%.3e)", condition)

    factor = scipy.linalg.lu_factor(scaled)
    solution = scipy.linalg.lu_solve(factor, scale * rhs)
    correction = scipy.linalg.lu_solve(factor, scale * (rhs - matrix @ (scale * solution)))
    return scale * (solution + correction)


def moduli_closed_form(Lambda_full: ArrayLike, p: CouplingParams, strict: bool = True) -> np.ndarray:
    """Closed-form moduli ``alpha (Lambda_a - y^2) prod_{b != a} (Lambda_a Lambda_b / alpha - alpha)/(Lambda_a - Lambda_b)``.

    Args:
        Lambda_full: The 2n eigenvalues ``(Lambda, Lambda^-1)``.
        p: Coupling parameters.
        strict: Raise when an entry is not positive.

    Returns:
        The 2n moduli.

    Raises:
        DomainViolation: If ``strict`` and some modulus is not positive.
    """
    lam = _check_full_spectrum(Lambda_full, p)
    alpha = p.alpha
    numer = np.outer(lam, lam) / alpha - alpha
    denom = lam[:, None] - lam[None, :]
    np.fill_diagonal(numer, 1.0)
    np.fill_diagonal(denom, 1.0)
    moduli = alpha * (lam - p.y**2) * np.prod(numer / denom, axis=1)

    if strict and np.any(moduli <= 0):
        index = int(np.argmin(moduli))
        raise DomainViolation(
            f"modulus |w~_{index + 1}|^2 = {moduli[index]:.6g} is not positive; "
            "lambda lies outside the allowed domain",
            inequality=f"|w~_{index + 1}|^2 > 0",
        )
    return moduli


def moduli_split_form(lam: ArrayLike, p: CouplingParams) -> np.ndarray:
    """The moduli as sinh products in ``lambda`` with ``Lambda = exp(2 lambda)``."""
    lam_arr = np.asarray(lam, dtype=float).reshape(-1)
    if lam_arr.shape != (p.n,):
        raise ValueError(f"lambda must have length {p.n}, got {lam_arr.shape[0]}")
    _check_full_spectrum(np.concatenate([np.exp(2 * lam_arr), np.exp(-2 * lam_arr)]), p)
    mu = p.mu
    y2 = p.y**2

    plus = lam_arr[:, None] + lam_arr[None, :]
    minus = lam_arr[:, None] - lam_arr[None, :]
    off = ~np.eye(p.n, dtype=bool)

    def interaction(shift: float) -> np.ndarray:
        ratio = np.ones((p.n, p.n))
        ratio[off] = (
            np.sinh(plus[off] + shift) * np.sinh(minus[off] + shift)
        ) / (np.sinh(minus[off]) * np.sinh(plus[off]))
        return np.prod(ratio, axis=1)

    common = np.exp(-mu) * np.sinh(mu) / np.sinh(2 * lam_arr)
    upper = common * (np.exp(2 * lam_arr) - y2) * interaction(mu)
    lower = common * (y2 - np.exp(-2 * lam_arr)) * interaction(-mu)
    return np.concatenate([upper, lower])
