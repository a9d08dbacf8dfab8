"""
Tests for rsvd matrix-group primitives, the bracket and the free flows.
"""

import numpy as np
import pytest

from rsvd.core.errors import BadWHat, NonRealTrace, SingularInput, StepTooLarge
from rsvd.matgroup import (
    ObservableTriple,
    decompose_bk,
    decompose_kb,
    dress_right,
    exact_F_flow,
    free_hamiltonian,
    integrate_Phi_flow,
    involution,
    is_block_diagonal,
    lie_project,
    master_hamiltonian,
    observables,
    pairing,
    poisson_bracket,
    random_group_element,
)
from rsvd.reduction import ReducedPoint, build_params, make_rng, reconstruct_point


@pytest.fixture
def rng():
    return make_rng(7)


@pytest.fixture
def golden_triple():
    """n = 1, u = v = 0, mu = lambda = ln 2, theta = 1."""
    p = build_params(1, 0.0, 0.0, np.log(2))
    return reconstruct_point(ReducedPoint(lam=[np.log(2)], theta=[1.0]), p)


class TestDecomposition:
    """Tests for the unitary-triangular factorizations."""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_kb_factors(self, rng, n):
        """Test g = k b with k unitary and b upper triangular with positive diagonal."""
        g = random_group_element(n, rng)
        point = decompose_kb(g)

        assert np.allclose(point.k @ point.b, g, atol=1e-10)
        assert np.allclose(point.k.conj().T @ point.k, np.eye(2 * n), atol=1e-10)
        assert np.allclose(np.tril(point.b, -1), 0)
        assert np.all(np.diag(point.b).real > 0)
        assert np.allclose(np.diag(point.b).imag, 0)

    def test_bk_factors(self, rng):
        """Test g = b_L k_R with the triangular factor on the left."""
        g = random_group_element(2, rng)
        b_left, k_right = decompose_bk(g)

        assert np.allclose(b_left @ k_right, g, atol=1e-10)
        assert np.allclose(np.tril(b_left, -1), 0, atol=1e-12)
        assert np.allclose(k_right @ k_right.conj().T, np.eye(4), atol=1e-10)

    def test_random_element_has_unit_determinant(self, rng):
        """Test both sampling modes land in SL(2n, C)."""
        assert np.isclose(np.linalg.det(random_group_element(2, rng)), 1.0)
        assert np.isclose(np.linalg.det(random_group_element(2, rng, scale=0.5)), 1.0)

    def test_singular_input_rejected(self):
        """Test that a rank-deficient matrix raises SingularInput."""
        g = np.ones((2, 2), dtype=complex)
        with pytest.raises(SingularInput):
            decompose_kb(g)

    def test_non_unit_determinant_rejected(self, rng):
        """Test that det g must equal 1 within 1e-8."""
        g = random_group_element(1, rng)
        with pytest.raises(SingularInput) as excinfo:
            decompose_kb(1.01 * g)
        assert "det g" in str(excinfo.value)
        point = decompose_kb(-g)
        assert np.allclose(point.k @ point.b, -g, atol=1e-10)

    def test_odd_size_rejected(self):
        """Test that an odd-sized matrix raises SingularInput."""
        with pytest.raises(SingularInput):
            decompose_kb(np.eye(3))

    def test_dress_right_stays_in_b(self, rng):
        """Test dressing b by a block-diagonal unitary returns an element of B."""
        point = decompose_kb(random_group_element(1, rng))
        f = np.diag(np.exp(1j * np.array([0.3, -0.3])))
        assert is_block_diagonal(f)

        f_tilde, b_new = dress_right(point.b, f)

        assert np.allclose(f_tilde @ point.b @ f.conj().T, b_new, atol=1e-10)
        assert np.allclose(np.tril(b_new, -1), 0, atol=1e-12)


class TestObservables:
    """Tests for the triple (Omega, L, w) built from a master point."""

    def test_triple_properties(self, rng):
        """Test Hermiticity, quasi-Hermiticity, det Omega = 1 and L I w = w."""
        n = 2
        point = decompose_kb(random_group_element(n, rng))
        w_hat = np.array([0.7, 0.2 + 0.1j, 0.0, 0.0])
        triple = observables(point, w_hat)

        assert triple.hermiticity_error() < 1e-10
        assert triple.quasi_hermiticity_error() < 1e-10
        assert triple.fixed_vector_error() < 1e-10
        assert np.isclose(np.linalg.det(triple.Omega).real, 1.0)

    def test_bad_w_hat(self, rng):
        """Test that w_hat with a lower half raises BadWHat."""
        point = decompose_kb(random_group_element(1, rng))
        with pytest.raises(BadWHat):
            observables(point, np.array([1.0, 0.5]))

    def test_pack_unpack(self, golden_triple):
        """Test the flat vector form used by the integrators."""
        restored = ObservableTriple.unpack(golden_triple.pack(), 1)
        assert np.array_equal(restored.Omega, golden_triple.Omega)
        assert np.array_equal(restored.L, golden_triple.L)
        assert np.array_equal(restored.w, golden_triple.w)


class TestBracket:
    """Tests for the Heisenberg-double Poisson bracket."""

    def test_lie_project_splits(self, rng):
        """Test X = X_k + X_b with anti-Hermitian X_k and triangular X_b."""
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        x -= np.trace(x) / 4 * np.eye(4)
        x_k, x_b = lie_project(x)

        assert np.allclose(x_k + x_b, x)
        assert np.allclose(x_k, -x_k.conj().T)
        assert np.allclose(np.tril(x_b, -1), 0)
        assert np.allclose(np.diag(x_b).imag, 0)

    def test_subalgebras_are_isotropic(self, rng):
        """Test <X_k, Y_k> = <X_b, Y_b> = 0 for the pairing Im tr XY."""
        x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        y = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        x_k, x_b = lie_project(x - np.trace(x) / 2 * np.eye(2))
        y_k, y_b = lie_project(y - np.trace(y) / 2 * np.eye(2))

        assert abs(pairing(x_k, y_k)) < 1e-12
        assert abs(pairing(x_b, y_b)) < 1e-12

    def test_free_hamiltonians_commute(self, rng):
        """Test {F_1, F_2} and {Phi_1, Phi_2} vanish near the identity."""
        g = random_group_element(1, rng, scale=0.5)

        assert abs(poisson_bracket(master_hamiltonian("F", 1), master_hamiltonian("F", 2), g)) < 1e-6
        assert abs(poisson_bracket(master_hamiltonian("Phi", 1), master_hamiltonian("Phi", 2), g)) < 1e-6

    def test_bracket_is_antisymmetric(self, rng):
        """Test {f, h} = -{h, f}."""
        g = random_group_element(1, rng, scale=0.5)
        f = master_hamiltonian("F", 1)
        h = master_hamiltonian("Phi", 1)

        assert abs(poisson_bracket(f, h, g) + poisson_bracket(h, f, g)) < 1e-8


class TestFreeFlows:
    """Tests for the free Hamiltonians and their flows on triples."""

    def test_identity_values(self):
        """Test F_1 = Phi_1 = n on the identity triple."""
        n = 2
        triple = ObservableTriple(Omega=np.eye(4, dtype=complex), L=np.eye(4, dtype=complex), w=np.zeros(4, dtype=complex))

        assert free_hamiltonian("F", 1, triple) == pytest.approx(n)
        assert free_hamiltonian("Phi", 1, triple) == pytest.approx(n)

    def test_golden_values(self, golden_triple):
        """Test F_1 = 2.125 and Phi_1 = 0.36 + 0.64 cos 1."""
        assert free_hamiltonian("F", 1, golden_triple) == pytest.approx(2.125, abs=1e-12)
        assert free_hamiltonian("Phi", 1, golden_triple) == pytest.approx(0.36 + 0.64 * np.cos(1.0), abs=1e-12)

    def test_non_real_trace(self):
        """Test that a complex trace raises NonRealTrace."""
        triple = ObservableTriple(
            Omega=np.diag([1.0 + 1.0j, 1.0]),
            L=np.eye(2, dtype=complex),
            w=np.zeros(2, dtype=complex),
        )
        with pytest.raises(NonRealTrace):
            free_hamiltonian("F", 1, triple)

    def test_invalid_index(self, golden_triple):
        """Test that l < 1 is rejected."""
        with pytest.raises(ValueError):
            free_hamiltonian("Phi", 0, golden_triple)

    def test_exact_F_flow_preserves_structure(self, golden_triple):
        """Test Omega is fixed and L I w = w holds along the F_2 flow."""
        moved = exact_F_flow(golden_triple, 2, 0.37)

        assert np.allclose(moved.Omega, golden_triple.Omega)
        assert moved.fixed_vector_error() < 1e-12
        assert moved.quasi_hermiticity_error() < 1e-12
        assert np.allclose(exact_F_flow(golden_triple, 1, 0.0).L, golden_triple.L)

    def test_Phi_flow_conserves(self, golden_triple):
        """Test Phi_1..Phi_3 and det Omega stay constant along the Phi_1 flow."""
        trajectory = integrate_Phi_flow(golden_triple, 1, 0.05, 1e-3)

        assert len(trajectory) == 51
        for name in ("Phi_1", "Phi_2", "Phi_3", "det_Omega"):
            series = trajectory.monitor(name)
            assert np.max(np.abs(series - series[0])) < 1e-9
        assert np.max(trajectory.monitor("fixed_vector")) < 1e-9

    def test_Phi_flow_step_too_large(self, golden_triple):
        """Test that a coarse step trips the drift check."""
        with pytest.raises(StepTooLarge) as excinfo:
            integrate_Phi_flow(golden_triple, 1, 2.0, 0.5, drift_tolerance=1e-14)
        assert excinfo.value.drift > 1e-14

    def test_involution(self):
        """Test I = diag(1, -1)."""
        assert np.array_equal(involution(1), np.diag([1.0, -1.0]).astype(complex))
