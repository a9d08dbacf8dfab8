"""
Unitary-triangular factorizations of SL(2n, C) and the right dressing action.
"""

import numpy as np

from rsvd.core.errors import BadWHat, SingularInput
from rsvd.matgroup.types import GroupElement, MasterPoint, ObservableTriple, involution

RANK_TOLERANCE = 1e-12
W_HAT_TOLERANCE = 1e-12
DETERMINANT_TOLERANCE = 1e-8


def _gram_schmidt(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column-wise classical Gram-Schmidt with one re-orthogonalization pass.

    Returns (q, r) with q unitary and r upper triangular with positive
    real diagonal such that q @ r == g.
    """
    size = g.shape[0]
    q = np.zeros((size, size), dtype=complex)
    r = np.zeros((size, size), dtype=complex)
    scale = max(1.0, float(np.linalg.norm(g)))

    for j in range(size):
        v = g[:, j].astype(complex)
        for _ in range(2):
            coeffs = q[:, :j].conj().T @ v
            v = v - q[:, :j] @ coeffs
            r[:j, j] += coeffs
        norm = np.linalg.norm(v)
        if norm <= RANK_TOLERANCE * scale:
            raise SingularInput(f"column {j} is linearly dependent (residual {norm:.3e})")
        r[j, j] = norm
        q[:, j] = v / norm

    return q, r


def decompose_kb(g: GroupElement) -> MasterPoint:
    """Factor g = k b with k unitary and b in B.

    Args:
        g: Element of SL(2n, C)

    Returns:
        MasterPoint holding the unique factors

    Raises:
        SingularInput: If g is numerically rank-deficient or det g differs from 1 by more than 1e-8
    """
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2:
        raise SingularInput(f"expected an even-sized square matrix, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise SingularInput("matrix has non-finite entries")
    determinant = np.linalg.det(g)
    if abs(determinant - 1.0) > DETERMINANT_TOLERANCE:
        raise SingularInput(f"det g = {determinant:.6g} is not 1 within {DETERMINANT_TOLERANCE:g}")

    k, b = _gram_schmidt(g)
    return MasterPoint(k=k, b=b)


def decompose_bk(g: GroupElement) -> tuple[np.ndarray, np.ndarray]:
    """Factor g = b_L k_R with b_L in B and k_R unitary.

    Uses the exchange matrix J: J g^dagger J = (J k_R^dagger J)(J b_L^dagger J)
    is a unitary-times-upper-triangular product.

    Returns:
        Tuple of (b_L, k_R)
    """
    g = np.asarray(g, dtype=complex)
    exchange = np.eye(g.shape[0])[::-1]
    point = decompose_kb(exchange @ g.conj().T @ exchange)
    b_left = (exchange @ point.b @ exchange).conj().T
    k_right = (exchange @ point.k @ exchange).conj().T
    return b_left, k_right


def dress_right(b: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Solve f_tilde b f^dagger = b' in B for the dressed pair.

    Args:
        b: Element of B
        f: Unitary (block diagonal when taken from K_+)

    Returns:
        Tuple of (f_tilde, b')
    """
    point = decompose_kb(b @ np.asarray(f).conj().T)
    return point.k.conj().T, point.b


def is_block_diagonal(matrix: np.ndarray, tol: float = 1e-10) -> bool:
    """True when both off-diagonal n x n blocks vanish."""
    n = matrix.shape[0] // 2
    return bool(
        np.linalg.norm(matrix[:n, n:]) <= tol and np.linalg.norm(matrix[n:, :n]) <= tol
    )


def observables(point: MasterPoint, w_hat: np.ndarray) -> ObservableTriple:
    """Map a master point to (Omega, L, w) = (b b^dagger, k^dagger I k I, k^dagger w_hat).

    Raises:
        BadWHat: If I w_hat != w_hat
    """
    inv = involution(point.n)
    w_hat = np.asarray(w_hat, dtype=complex)
    if np.linalg.norm(inv @ w_hat - w_hat) > W_HAT_TOLERANCE:
        raise BadWHat("w_hat must have vanishing lower half")

    k, b = point.k, point.b
    return ObservableTriple(
        Omega=b @ b.conj().T,
        L=k.conj().T @ inv @ k @ inv,
        w=k.conj().T @ w_hat,
    )
