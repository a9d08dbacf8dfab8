"""
Value types of the master phase space SL(2n, C).

GroupElement is a plain 2n x 2n complex ndarray; the structured points
below are frozen dataclasses so they can be shared freely between threads.
"""

from dataclasses import dataclass

import numpy as np

GroupElement = np.ndarray
LieAlgebraElement = np.ndarray


def involution(n: int) -> np.ndarray:
    """Return I = diag(1_n, -1_n)."""
    return np.diag(np.concatenate([np.ones(n), -np.ones(n)])).astype(complex)


def random_group_element(
    n: int, rng: np.random.Generator, scale: float | None = None
) -> GroupElement:
    """Draw a random element of SL(2n, C).

    Args:
        n: Half dimension
        rng: Random generator
        scale: If given, return exp(scale * X) for a random traceless X
            (a point near the identity); otherwise a Ginibre matrix
            rescaled to unit determinant.
    """
    size = 2 * n
    z = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    if scale is not None:
        from scipy.linalg import expm

        z = z - (np.trace(z) / size) * np.eye(size)
        return expm(scale * z / np.sqrt(size))
    return z / np.linalg.det(z) ** (1.0 / size)


@dataclass(frozen=True, eq=False)
class MasterPoint:
    """A point g = k b of the master space.

    Attributes:
        k: Unitary factor with unit determinant
        b: Upper triangular factor with real positive diagonal
    """

    k: np.ndarray
    b: np.ndarray

    @property
    def n(self) -> int:
        return self.k.shape[0] // 2

    def group_element(self) -> GroupElement:
        return self.k @ self.b


@dataclass(frozen=True, eq=False)
class ObservableTriple:
    """The invariant-building image (Omega, L, w) of a master point.

    Attributes:
        Omega: Hermitian positive definite, unit determinant
        L: Quasi-Hermitian, L^dagger = I L I
        w: Complex 2n-vector
    """

    Omega: np.ndarray
    L: np.ndarray
    w: np.ndarray

    @property
    def n(self) -> int:
        return self.Omega.shape[0] // 2

    def hermiticity_error(self) -> float:
        return float(np.linalg.norm(self.Omega - self.Omega.conj().T))

    def quasi_hermiticity_error(self) -> float:
        inv = involution(self.n)
        return float(np.linalg.norm(self.L.conj().T - inv @ self.L @ inv))

    def fixed_vector_error(self) -> float:
        """Norm of L I w - w."""
        inv = involution(self.n)
        return float(np.linalg.norm(self.L @ inv @ self.w - self.w))

    def pack(self) -> np.ndarray:
        """Flatten to one complex vector (L, Omega, w) for the integrators."""
        return np.concatenate([self.L.ravel(), self.Omega.ravel(), self.w])

    @classmethod
    def unpack(cls, vector: np.ndarray, n: int) -> "ObservableTriple":
        size = 2 * n
        block = size * size
        return cls(
            Omega=vector[block:2 * block].reshape(size, size),
            L=vector[:block].reshape(size, size),
            w=vector[2 * block:],
        )


@dataclass(frozen=True, eq=False)
class TripleTangent:
    """Velocity (L', Omega', w') of a triple along a flow."""

    L: np.ndarray
    Omega: np.ndarray
    w: np.ndarray

    def pack(self) -> np.ndarray:
        return np.concatenate([self.L.ravel(), self.Omega.ravel(), self.w])
