"""
Heisenberg-double Poisson bracket on SL(2n, C), evaluated numerically.

Gradients are obtained by central finite differences along a fixed real
basis of sl(2n, C) and converted to Lie algebra elements through the
inverse Gram matrix of the pairing <X, Y> = Im tr XY.
"""

from functools import lru_cache
from typing import Callable, Literal

import numpy as np
from scipy.linalg import expm

from rsvd.matgroup.decompose import decompose_kb, observables
from rsvd.matgroup.flows import free_hamiltonian
from rsvd.matgroup.types import GroupElement, LieAlgebraElement

ScalarFunction = Callable[[GroupElement], float]

DEFAULT_STEP = 1e-5


def pairing(x: LieAlgebraElement, y: LieAlgebraElement) -> float:
    """Invariant inner product Im tr(XY)."""
    return float(np.einsum("ij,ji->", x, y).imag)


def lie_project(x: LieAlgebraElement) -> tuple[np.ndarray, np.ndarray]:
    """Split X = X_k + X_b into su(2n) and Lie(B) components.

    X_k is anti-Hermitian, X_b upper triangular with real diagonal. For
    traceless X both parts are traceless.
    """
    x = np.asarray(x, dtype=complex)
    lower = np.tril(x, -1)
    diag = np.diag(x)

    x_k = lower - lower.conj().T + np.diag(1j * diag.imag)
    x_b = np.triu(x, 1) + lower.conj().T + np.diag(diag.real)
    return x_k, x_b


def r_matrix(x: LieAlgebraElement) -> np.ndarray:
    """Apply R = (P_k - P_b) / 2."""
    x_k, x_b = lie_project(x)
    return 0.5 * (x_k - x_b)


@lru_cache(maxsize=None)
def lie_basis(size: int) -> tuple[np.ndarray, np.ndarray]:
    """Real basis of sl(size, C) and the inverse Gram matrix of the pairing.

    The basis consists of traceless Hermitian / anti-Hermitian pairs:
    E_ij + E_ji, i(E_ij + E_ji), E_ij - E_ji, i(E_ij - E_ji) for i < j and
    H_k, i H_k with H_k = E_kk - E_k+1,k+1.

    Returns:
        Tuple of (basis array of shape (m, size, size), inverse Gram matrix)
    """
    elements = []
    for i in range(size):
        for j in range(i + 1, size):
            sym = np.zeros((size, size), dtype=complex)
            sym[i, j] = sym[j, i] = 1.0
            anti = np.zeros((size, size), dtype=complex)
            anti[i, j], anti[j, i] = 1.0, -1.0
            elements.extend([sym, 1j * sym, anti, 1j * anti])
    for k in range(size - 1):
        h = np.zeros((size, size), dtype=complex)
        h[k, k], h[k + 1, k + 1] = 1.0, -1.0
        elements.extend([h, 1j * h])

    basis = np.array(elements)
    gram = np.einsum("aij,bji->ab", basis, basis).imag
    dual = np.linalg.inv(gram)

    basis.setflags(write=False)
    dual.setflags(write=False)
    return basis, dual


@lru_cache(maxsize=None)
def _exponentials(size: int, step: float) -> np.ndarray:
    """exp(s X_a) for s in (-2h, -h, h, 2h) and every basis element."""
    basis, _ = lie_basis(size)
    table = np.array([[expm(s * x) for s in (-2 * step, -step, step, 2 * step)] for x in basis])
    table.setflags(write=False)
    return table


def _directional(values: np.ndarray, step: float) -> float:
    """Fourth-order central difference from samples at -2h, -h, h, 2h."""
    m2, m1, p1, p2 = values
    return (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * step)


def gradients(
    f: ScalarFunction, g: GroupElement, step: float = DEFAULT_STEP
) -> tuple[np.ndarray, np.ndarray]:
    """Left and right gradients of f at g.

    They satisfy d/dt f(exp(tX) g exp(tY)) = <X, grad> + <Y, grad'> at t = 0.

    Args:
        f: Smooth real function on the group
        g: Evaluation point
        step: Finite-difference step h

    Returns:
        Tuple of (left gradient, right gradient)
    """
    g = np.asarray(g, dtype=complex)
    size = g.shape[0]
    basis, dual = lie_basis(size)
    table = _exponentials(size, step)

    left = np.empty(len(basis))
    right = np.empty(len(basis))
    for a, shifts in enumerate(table):
        left[a] = _directional(np.array([f(e @ g) for e in shifts]), step)
        right[a] = _directional(np.array([f(g @ e) for e in shifts]), step)

    grad_left = np.einsum("a,aij->ij", dual @ left, basis)
    grad_right = np.einsum("a,aij->ij", dual @ right, basis)
    return grad_left, grad_right


def bracket_from_gradients(
    f_grads: tuple[np.ndarray, np.ndarray], h_grads: tuple[np.ndarray, np.ndarray]
) -> float:
    """{f, h} from precomputed (left, right) gradient pairs of f and h."""
    return pairing(f_grads[0], r_matrix(h_grads[0])) + pairing(f_grads[1], r_matrix(h_grads[1]))


def poisson_bracket(
    f: ScalarFunction, h: ScalarFunction, g: GroupElement, step: float = DEFAULT_STEP
) -> float:
    """Evaluate {f, h}(g) = <grad f, R grad h> + <grad' f, R grad' h>."""
    return bracket_from_gradients(gradients(f, g, step), gradients(h, g, step))


def master_hamiltonian(family: Literal["F", "Phi"], l: int) -> ScalarFunction:
    """Return F_l or Phi_l as a function of the group element g."""

    def evaluate(g: GroupElement) -> float:
        point = decompose_kb(g)
        triple = observables(point, np.zeros(g.shape[0], dtype=complex))
        return free_hamiltonian(family, l, triple)

    evaluate.__name__ = f"{family}_{l}"
    return evaluate
