"""
Tests for rsvd canonical integration and the two-route experiments.
"""

import math

import numpy as np
import pytest

from rsvd.core import DiscontinuousAngle, DomainExit, DomainViolation, Trajectory, rk4_step, step_count
from rsvd.dynamics import (
    ReducedHamiltonian,
    canonical_rhs,
    conservation_report,
    darboux_experiment,
    duality_experiment,
    f1_dual_hamiltonian,
    f_action_hamiltonian,
    integrate_canonical,
    phi1_hamiltonian,
    richardson_check,
    time_reversal_error,
    unwrap_angles,
    wrap_angle,
)
from rsvd.models import DualPoint
from rsvd.reduction import ReducedPoint, build_params

LN2 = math.log(2)


@pytest.fixture
def golden():
    return build_params(1, 0.0, 0.0, LN2)


@pytest.fixture
def coupled():
    return build_params(2, 0.1, 0.3, LN2)


class TestIntegrators:
    """Tests for the fixed-step building blocks."""

    def test_rk4_exponential(self):
        """Test one RK4 step of x' = x matches the Taylor polynomial."""
        result = rk4_step(lambda x: x, np.array([1.0]), 0.1)
        assert result[0] == pytest.approx(1 + 0.1 + 0.01 / 2 + 0.001 / 6 + 0.0001 / 24)

    def test_step_count(self):
        """Test the number of fixed steps and the argument checks."""
        assert step_count(0.1, 1e-3) == 100
        assert step_count(0.0, 1e-3) == 0
        with pytest.raises(ValueError):
            step_count(1.0, 0.0)
        with pytest.raises(ValueError):
            step_count(-1.0, 0.1)

    def test_trajectory_rejects_time_going_back(self):
        """Test times must increase."""
        trajectory = Trajectory()
        trajectory.append(0.0, "a", H=1.0)
        with pytest.raises(ValueError):
            trajectory.append(0.0, "b", H=1.0)
        assert trajectory.to_dict() == {"times": [0.0], "monitors": {"H": [1.0]}}


class TestCanonicalFlow:
    """Tests for integrate_canonical and its diagnostics."""

    def test_rhs_convention(self, golden):
        """Test d lambda/dt = -dH/dtheta and d theta/dt = dH/dlambda."""
        H = phi1_hamiltonian(golden)
        point = ReducedPoint(lam=[LN2], theta=[1.0])
        d_lam, d_theta = canonical_rhs(H, point)

        # Phi_1 = 0.36 + 0.64 cos theta at this lambda
        assert d_lam[0] == pytest.approx(0.64 * math.sin(1.0))
        reversed_lam, reversed_theta = canonical_rhs(H, point, orientation=-1.0)
        assert reversed_lam[0] == pytest.approx(-d_lam[0])
        assert reversed_theta[0] == pytest.approx(-d_theta[0])

    @pytest.mark.parametrize("method,tolerance", [("rk4", 1e-10), ("stormer-split", 1e-5)])
    def test_energy_conservation(self, coupled, method, tolerance):
        """Test H stays constant along its own flow."""
        H = phi1_hamiltonian(coupled)
        trajectory = integrate_canonical(H, ReducedPoint(lam=[2.0, 1.0], theta=[0.5, 2.0]), 0.1, 1e-3, method)

        assert len(trajectory) == 101
        energy = trajectory.monitor("H")
        assert np.max(np.abs(energy - energy[0])) < tolerance
        assert np.all(trajectory.monitor("domain_slack") > 0)

    def test_dual_flow_conserves(self, coupled):
        """Test the dual F_1 is conserved along its flow."""
        H = f1_dual_hamiltonian(coupled)
        trajectory = integrate_canonical(H, DualPoint(phat=[-0.5, -2.0], qhat=[1.0, 2.0]), 0.1, 1e-3)

        assert isinstance(trajectory.final, DualPoint)
        row = conservation_report(trajectory, {"F_1": H})[0]
        assert row.max_drift < 1e-10
        assert row.drift_rate == pytest.approx(row.max_drift / 0.1)

    def test_action_flow_is_linear(self):
        """Test lambda is fixed and theta advances at 2 sinh(2 lambda) under F_1."""
        trajectory = integrate_canonical(f_action_hamiltonian(1), ReducedPoint(lam=[LN2], theta=[0.0]), 0.2, 1e-2)

        assert trajectory.final.lam[0] == pytest.approx(LN2)
        assert trajectory.final.theta[0] == pytest.approx(3.75 * 0.2)

    def test_time_reversal(self, coupled):
        """Test integrating forward then backward returns to the start."""
        point = ReducedPoint(lam=[2.0, 1.0], theta=[0.5, 2.0])
        assert time_reversal_error(phi1_hamiltonian(coupled), point, 0.1, 1e-3) < 1e-9

    def test_richardson_order(self, golden):
        """Test RK4 shows fourth-order convergence."""
        report = richardson_check(phi1_hamiltonian(golden), ReducedPoint(lam=[LN2], theta=[1.0]), 0.5, 0.05)
        assert report.dts == [0.05, 0.025, 0.0125]
        assert 3.5 < report.state_order < 4.5

    def test_start_outside_domain(self, coupled):
        """Test that an initial point outside the domain is refused."""
        with pytest.raises(DomainViolation):
            integrate_canonical(phi1_hamiltonian(coupled), ReducedPoint(lam=[1.0, 0.9], theta=[0.0, 0.0]), 0.1, 1e-2)

    def test_domain_exit(self, golden):
        """Test that leaving the domain mid-flow raises DomainExit with the time."""
        drift = ReducedHamiltonian(
            name="drift",
            value=lambda lam, theta: float(np.sum(theta)),
            gradient=lambda lam, theta: (np.zeros_like(lam), np.ones_like(theta)),
            domain=phi1_hamiltonian(golden).domain,
        )
        with pytest.raises(DomainExit) as excinfo:
            integrate_canonical(drift, ReducedPoint(lam=[0.05], theta=[0.0]), 0.2, 1e-2)
        assert excinfo.value.time == pytest.approx(0.05, abs=0.011)

    def test_unknown_method(self, golden):
        """Test that an unknown integrator name is rejected."""
        with pytest.raises(ValueError):
            integrate_canonical(phi1_hamiltonian(golden), ReducedPoint(lam=[LN2], theta=[0.0]), 0.1, 1e-2, "euler")


class TestAngles:
    """Tests for angle wrapping and lifting."""

    def test_wrap(self):
        """Test wrapping into [-pi, pi)."""
        assert np.allclose(wrap_angle(np.array([0.0, 3 * math.pi / 2, -3 * math.pi / 2])), [0.0, -math.pi / 2, math.pi / 2])

    def test_unwrap_continuous(self):
        """Test a steadily increasing angle is lifted past 2 pi."""
        times = np.linspace(0.0, 1.0, 21)
        true = 0.1 + 8.0 * times
        lifted = unwrap_angles(times, np.mod(true, 2 * math.pi)[:, None], np.array([0.1]))
        assert np.allclose(lifted[:, 0], true)

    def test_unwrap_jump(self):
        """Test a jump above pi/2 raises DiscontinuousAngle."""
        times = np.array([0.0, 0.1, 0.2])
        angles = np.array([[0.0], [0.1], [2.0]])
        with pytest.raises(DiscontinuousAngle):
            unwrap_angles(times, angles, np.array([0.0]))


class TestExperiments:
    """Tests for the two-route comparisons."""

    def test_darboux_single_particle(self, golden):
        """Test the triple flow and the reduced flow agree for n = 1."""
        report = darboux_experiment(ReducedPoint(lam=[LN2], theta=[1.0]), golden, t_end=0.05, dt=1e-3)
        assert report.passed
        assert report.max_deviation < 1e-6

    def test_darboux_coupled(self, coupled):
        """Test agreement for n = 2 within the coupled tolerance."""
        report = darboux_experiment(
            ReducedPoint(lam=[2.0, 1.0], theta=[0.5, 2.0]), coupled, t_end=0.02, dt=1e-3, tolerance=1e-5
        )
        assert report.passed

    def test_darboux_flipped_sign_fails(self, golden):
        """Test that reversing the reduced bracket is detected."""
        report = darboux_experiment(
            ReducedPoint(lam=[LN2], theta=[1.0]), golden, t_end=0.05, dt=1e-3, orientation=-1.0
        )
        assert not report.passed
        assert report.max_deviation > 1e-3

    def test_duality_slope(self, golden):
        """Test theta moves with slope 3.75 under F_1 at lambda = ln 2."""
        report = duality_experiment(ReducedPoint(lam=[LN2], theta=[0.0]), golden, l=1, t_end=1.0)

        assert report.expected_slopes[0] == pytest.approx(3.75)
        assert report.observed_slopes[0] == pytest.approx(3.75, abs=1e-6)
        assert report.passed

    def test_duality_higher_index(self, coupled):
        """Test lambda stays put and theta is linear under F_2 for n = 2."""
        report = duality_experiment(ReducedPoint(lam=[2.0, 1.0], theta=[0.5, 2.0]), coupled, l=2, t_end=0.01)
        assert report.lambda_deviation < 1e-9
        assert report.theta_deviation < 1e-7
