"""Reduced points (lambda, theta) and the maps to and from constrained triples."""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from rsvd.core.errors import NonGenericSpectrum, OffSlice
from rsvd.matgroup.types import ObservableTriple, involution
from rsvd.reduction.domain import require_domain
from rsvd.reduction.frame import DEGENERACY_TOLERANCE, spectral_frame
from rsvd.reduction.moduli import moduli_closed_form
from rsvd.reduction.params import CouplingParams

logger = logging.getLogger(__name__)

SLICE_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class ReducedPoint:
    """Canonical coordinates of the reduced system; ``theta`` is taken mod 2 pi."""

    lam: np.ndarray
    theta: np.ndarray

    def __post_init__(self) -> None:
        lam = np.asarray(self.lam, dtype=float).reshape(-1)
        theta = np.asarray(self.theta, dtype=float).reshape(-1)
        if lam.shape != theta.shape:
            raise ValueError(f"lambda and theta lengths differ: {lam.size} != {theta.size}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "theta", theta)

    @property
    def n(self) -> int:
        return int(self.lam.size)

    def pack(self) -> np.ndarray:
        return np.concatenate([self.lam, self.theta])

    @classmethod
    def unpack(cls, vector: ArrayLike) -> "ReducedPoint":
        values = np.asarray(vector, dtype=float)
        n = values.size // 2
        return cls(lam=values[:n], theta=values[n:])


def gauge_vector(rp: ReducedPoint, p: CouplingParams) -> np.ndarray:
    """``w~`` in the complete gauge: real positive first half, phases ``theta`` on the second."""
    Lambda_full = np.concatenate([np.exp(2 * rp.lam), np.exp(-2 * rp.lam)])
    moduli = moduli_closed_form(Lambda_full, p)
    w_tilde = np.sqrt(moduli).astype(complex)
    w_tilde[rp.n :] *= np.exp(1j * rp.theta)
    return w_tilde


def reconstruct_point(rp: ReducedPoint, p: CouplingParams) -> ObservableTriple:
    """Build the constrained triple ``(Omega, L, w)`` in slice form from ``(lambda, theta)``.

    Raises:
        DomainViolation: If ``lambda`` is outside the allowed domain.
    """
    if rp.n != p.n:
        raise ValueError(f"point has n={rp.n}, parameters have n={p.n}")
    require_domain("lambda", rp.lam, p)

    frame = spectral_frame(p, Lambda=np.exp(2 * rp.lam))
    lam_full = frame.Lambda_full
    w_tilde = gauge_vector(rp, p)
    alpha2 = p.alpha**2

    diagonal = lam_full**2 - 2 * p.y**2 * lam_full + alpha2
    q = (np.diag(diagonal) + 2 * np.outer(w_tilde, w_tilde.conj())) / (np.outer(lam_full, lam_full) - alpha2)

    rho = frame.rho
    L = rho @ q @ rho @ involution(p.n)
    return ObservableTriple(Omega=frame.slice_omega(p.x), L=L, w=rho @ w_tilde)


def extract_invariants(t: ObservableTriple, p: CouplingParams) -> ReducedPoint:
    """Recover ``(lambda, theta)`` from a constrained triple in slice form.

    Raises:
        OffSlice: If the lower-right block of Omega differs from ``x^-2`` by more than 1e-6.
        NonGenericSpectrum: If the singular values of the off-diagonal block nearly collide.
    """
    n = p.n
    if t.n != n:
        raise ValueError(f"triple has n={t.n}, parameters have n={n}")
    x = p.x

    deviation = np.linalg.norm(t.Omega[n:, n:] - np.eye(n) / x**2)
    if deviation > SLICE_TOLERANCE:
        raise OffSlice(f"Omega_22 deviates from x^-2 by {deviation:.3e}")

    left, beta, right_h = np.linalg.svd(x * t.Omega[:n, n:])
    if beta[-1] <= DEGENERACY_TOLERANCE or np.any(beta[:-1] - beta[1:] <= DEGENERACY_TOLERANCE):
        raise NonGenericSpectrum(f"singular values {beta.tolist()} are degenerate")

    frame = spectral_frame(p, beta=beta)
    regauged = np.concatenate([left.conj().T @ t.w[:n], right_h @ t.w[n:]])
    w_tilde = frame.rho @ regauged

    theta = np.angle(w_tilde[:n].conj() * w_tilde[n:])
    return ReducedPoint(lam=0.5 * np.log(frame.Lambda), theta=np.mod(theta, 2 * np.pi))
