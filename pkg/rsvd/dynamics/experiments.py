"""
Two-route experiments linking the unreduced flows on triples to the
reduced canonical flows.

darboux_experiment compares the Phi_1 flow on triples, read through
extract_invariants, with the canonical flow of the reduced Phi_1.
duality_experiment checks that under the exact F_l flow the lambda stay
fixed while the theta advance linearly.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from rsvd.core.errors import DiscontinuousAngle
from rsvd.dynamics.hamiltonian import phi1_hamiltonian
from rsvd.dynamics.integrate import Method, integrate_canonical
from rsvd.matgroup.flows import exact_F_flow, integrate_Phi_flow
from rsvd.reduction.params import CouplingParams
from rsvd.reduction.points import ReducedPoint, extract_invariants, reconstruct_point

logger = logging.getLogger(__name__)

MAX_ANGLE_JUMP = np.pi / 2
MAX_FIT_SAMPLES = 2001


def wrap_angle(values: np.ndarray) -> np.ndarray:
    """Map angles to [-pi, pi)."""
    return np.mod(np.asarray(values) + np.pi, 2 * np.pi) - np.pi


def unwrap_angles(times: np.ndarray, angles: np.ndarray, start: np.ndarray) -> np.ndarray:
    """Continuous lift of sampled angles starting near ``start``.

    Args:
        times: Sample times, used only for the diagnostic.
        angles: Array of shape (samples, n) taken mod 2 pi.
        start: Reference value for the first sample.

    Raises:
        DiscontinuousAngle: If consecutive samples differ by more than pi/2.
    """
    lifted = np.empty_like(angles)
    lifted[0] = start + wrap_angle(angles[0] - start)
    for i in range(1, angles.shape[0]):
        step = wrap_angle(angles[i] - angles[i - 1])
        jump = float(np.max(np.abs(step)))
        if jump > MAX_ANGLE_JUMP:
            raise DiscontinuousAngle(float(times[i]), jump)
        lifted[i] = lifted[i - 1] + step
    return lifted


@dataclass
class DarbouxReport:
    """Deviation between the two routes to the reduced Phi_1 flow."""

    times: np.ndarray
    lambda_deviation: float
    theta_deviation: float
    tolerance: float
    extracted: np.ndarray = field(repr=False)
    canonical: np.ndarray = field(repr=False)

    @property
    def max_deviation(self) -> float:
        return max(self.lambda_deviation, self.theta_deviation)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def darboux_experiment(
    rp0: ReducedPoint,
    p: CouplingParams,
    t_end: float = 0.1,
    dt: float = 1e-4,
    tolerance: float = 1e-6,
    method: Method = "rk4",
    orientation: float = 1.0,
) -> DarbouxReport:
    """Compare the Phi_1 triple flow with the canonical flow of the reduced Phi_1.

    Args:
        rp0: Initial reduced point.
        p: Coupling parameters.
        t_end: Comparison horizon.
        dt: Common step size of both integrations.
        tolerance: Acceptance bound on the maximal coordinate deviation.
        method: Integrator for the reduced side.
        orientation: Sign of the reduced bracket; -1 gives a negative control.

    Returns:
        The deviation report.
    """
    triple_flow = integrate_Phi_flow(reconstruct_point(rp0, p), 1, t_end, dt)
    reduced_flow = integrate_canonical(phi1_hamiltonian(p), rp0, t_end, dt, method, orientation)
    times = np.asarray(triple_flow.times)

    invariants = [extract_invariants(state, p) for state in triple_flow.states]
    lam_extracted = np.array([point.lam for point in invariants])
    theta_extracted = unwrap_angles(times, np.array([point.theta for point in invariants]), rp0.theta)

    lam_reduced = np.array([point.lam for point in reduced_flow.states])
    theta_reduced = np.array([point.theta for point in reduced_flow.states])

    report = DarbouxReport(
        times=times,
        lambda_deviation=float(np.max(np.abs(lam_extracted - lam_reduced))),
        theta_deviation=float(np.max(np.abs(wrap_angle(theta_extracted - theta_reduced)))),
        tolerance=tolerance,
        extracted=np.hstack([lam_extracted, theta_extracted]),
        canonical=np.hstack([lam_reduced, theta_reduced]),
    )
    logger.debug("Darboux deviation %.3e over %d samples", report.max_deviation, times.size)
    return report


@dataclass
class DualityReport:
    """Linearity of the angle flow under F_l."""

    l: int
    times: np.ndarray
    expected_slopes: np.ndarray
    observed_slopes: np.ndarray
    lambda_deviation: float
    theta_deviation: float
    lambda_tolerance: float = 1e-9
    theta_tolerance: float = 1e-7

    @property
    def passed(self) -> bool:
        return self.lambda_deviation <= self.lambda_tolerance and self.theta_deviation <= self.theta_tolerance


def duality_experiment(
    rp0: ReducedPoint,
    p: CouplingParams,
    l: int = 1,
    t_end: float = 1.0,
    samples: int = 11,
    lambda_tolerance: float = 1e-9,
    theta_tolerance: float = 1e-7,
) -> DualityReport:
    """Follow the exact F_l flow and read off (lambda, theta) along it.

    When affordable the sampling is refined until the angles move by less
    than pi/4 between samples, and the observed slopes are fitted on the
    unwrapped angles. Faster angles are compared modulo 2 pi only, and the
    observed slope is the expected one corrected by the final residual.
    """
    triple0 = reconstruct_point(rp0, p)
    slopes = 2.0 * np.sinh(2 * l * rp0.lam)

    resolved = int(np.ceil(4 * np.max(np.abs(slopes)) * t_end / np.pi)) + 1
    fit = t_end > 0 and resolved <= MAX_FIT_SAMPLES
    count = max(samples, resolved if fit else 0, 2)
    times = np.linspace(0.0, t_end, count)
    invariants = [extract_invariants(exact_F_flow(triple0, l, t), p) for t in times]
    lam = np.array([point.lam for point in invariants])
    theta = np.array([point.theta for point in invariants])

    predicted = theta[0] + np.outer(times, slopes)
    residual = wrap_angle(theta - predicted)
    theta_deviation = float(np.max(np.abs(residual)))
    lambda_deviation = float(np.max(np.abs(lam - lam[0])))

    if fit:
        lifted = unwrap_angles(times, theta, theta[0])
        observed = np.polyfit(times, lifted, 1)[0]
    elif t_end > 0:
        observed = slopes + residual[-1] / t_end
    else:
        observed = slopes.copy()

    return DualityReport(
        l=l,
        times=times,
        expected_slopes=slopes,
        observed_slopes=np.atleast_1d(observed),
        lambda_deviation=lambda_deviation,
        theta_deviation=theta_deviation,
        lambda_tolerance=lambda_tolerance,
        theta_tolerance=theta_tolerance,
    )
