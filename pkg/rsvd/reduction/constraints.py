"""Residuals of the constraint identities on master space and on observables."""

from typing import Literal

import numpy as np

from rsvd.matgroup.types import GroupElement, ObservableTriple, involution
from rsvd.reduction.params import CouplingParams

Side = Literal["right", "left"]


def _block_diag(top: np.ndarray, bottom: np.ndarray) -> np.ndarray:
    n = top.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, :n] = top
    out[n:, n:] = bottom
    return out


def constraint_residual(
    side: Side,
    g: GroupElement,
    blocks: tuple[np.ndarray, np.ndarray],
) -> np.ndarray:
    """Left-minus-right side of the triangular block identity for ``g``.

    For ``side="right"`` the identity reads
    ``g^dagger g - g^dagger g diag((m1^dagger m1)^-1, 0) g^dagger g = diag(0, m2^dagger m2)``
    and vanishes iff the right triangular factor of ``g`` has diagonal
    blocks ``(m1, m2)``. For ``side="left"`` it reads
    ``g g^dagger - g g^dagger diag(0, (m2 m2^dagger)^-1) g g^dagger = diag(m1 m1^dagger, 0)``
    and constrains the left triangular factor.

    Args:
        side: Which factorization the blocks refer to.
        g: Element of SL(2n, C).
        blocks: The two prescribed n x n upper triangular blocks.

    Returns:
        The 2n x 2n residual matrix.
    """
    first, second = (np.asarray(block, dtype=complex) for block in blocks)
    g = np.asarray(g, dtype=complex)
    zero = np.zeros_like(first)

    if side == "right":
        gram = g.conj().T @ g
        middle = _block_diag(np.linalg.inv(first.conj().T @ first), zero)
        target = _block_diag(zero, second.conj().T @ second)
    elif side == "left":
        gram = g @ g.conj().T
        middle = _block_diag(zero, np.linalg.inv(second @ second.conj().T))
        target = _block_diag(first @ first.conj().T, zero)
    else:
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")

    return gram - gram @ middle @ gram - target


def surface_blocks(p: CouplingParams) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Diagonal blocks fixed by the constraint surface on each side."""
    identity = np.eye(p.n, dtype=complex)
    return {
        "right": (p.x * identity, identity / p.x),
        "left": (p.sigma / p.y, p.y * identity),
    }


def surface_residual(g: GroupElement, p: CouplingParams) -> dict[str, float]:
    """Frobenius norms of both block identities for the constraint surface."""
    return {
        side: float(np.linalg.norm(constraint_residual(side, g, blocks)))  # type: ignore[arg-type]
        for side, blocks in surface_blocks(p).items()
    }


def main_constraint_residual(t: ObservableTriple, p: CouplingParams) -> np.ndarray:
    """Evaluate ``2y^2 Omega - Omega^2 + Omega L I Omega - alpha^2 - alpha^2 L I - 2 w w^dagger``.

    A triple lies on the gauge-fixed constraint surface iff the result is zero.
    """
    size = 2 * t.n
    identity = np.eye(size, dtype=complex)
    li = t.L @ involution(t.n)
    omega = t.Omega
    alpha2 = p.alpha**2

    return (
        2 * p.y**2 * omega
        - omega @ omega
        + omega @ li @ omega
        - alpha2 * identity
        - alpha2 * li
        - 2 * np.outer(t.w, t.w.conj())
    )
