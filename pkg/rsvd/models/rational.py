"""Scaling limit of Phi_1 towards its rational counterpart."""

import numpy as np
from numpy.typing import ArrayLike

from rsvd.models.phi import ham_phi1_red, sqrt_factor
from rsvd.reduction.domain import require_domain
from rsvd.reduction.params import CouplingParams
from rsvd.reduction.points import ReducedPoint


def potential_rational(lam: ArrayLike, p: CouplingParams) -> float:
    """``V_0 = (uv / mu^2) (prod_k (1 - mu^2 / lambda_k^2) - 1)``."""
    lam_arr = np.asarray(lam, dtype=float)
    return float(p.u * p.v / p.mu**2 * (np.prod(1.0 - p.mu**2 / lam_arr**2) - 1.0))


def _ham_zero(rp: ReducedPoint, p: CouplingParams) -> float:
    lam = rp.lam
    n = lam.size
    external = sqrt_factor(1.0 - p.v**2 / lam**2, "1 - v^2 / lambda^2") * sqrt_factor(
        1.0 - p.u**2 / lam**2, "1 - u^2 / lambda^2"
    )
    pair = np.ones((n, n))
    off = ~np.eye(n, dtype=bool)
    diff = (lam[:, None] - lam[None, :])[off]
    total = (lam[:, None] + lam[None, :])[off]
    pair[off] = sqrt_factor(1.0 - p.mu**2 / diff**2, "1 - mu^2 / (lambda_k - lambda_l)^2") * sqrt_factor(
        1.0 - p.mu**2 / total**2, "1 - mu^2 / (lambda_k + lambda_l)^2"
    )
    return potential_rational(lam, p) + float(np.dot(np.cos(rp.theta), external * np.prod(pair, axis=1)))


def ham_rational(rp: ReducedPoint, p: CouplingParams, r: float) -> float:
    """Evaluate ``H_r(lambda, theta) = Phi_1(r lambda, theta; r u, r v, r mu)``.

    ``r = 0`` gives the closed-form limit ``H_0``. The domain in ``lambda``
    is the same for every ``r``.

    Raises:
        DomainViolation: If ``lambda`` is outside the domain for ``(u, v, mu)``.
        ValueError: If ``r`` is negative.
    """
    if r < 0:
        raise ValueError(f"r must be non-negative, got {r}")
    require_domain("lambda", rp.lam, p)
    if r == 0:
        return _ham_zero(rp, p)
    return ham_phi1_red(ReducedPoint(lam=r * rp.lam, theta=rp.theta), p.scaled(r))
