"""
Invariant suites run by ``rsvd verify``.

Every suite draws its random points from a counter-based generator keyed by
``config.seed + index``, so results do not depend on the number of workers.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, TypeVar

import numpy as np

from rsvd.config.schema import RunConfig
from rsvd.core.errors import RSVDError
from rsvd.dynamics import darboux_experiment, duality_experiment
from rsvd.matgroup import (
    bracket_from_gradients,
    decompose_bk,
    decompose_kb,
    free_hamiltonian,
    gradients,
    involution,
    master_hamiltonian,
    random_group_element,
)
from rsvd.models import DualPoint, ham_f1_dual, ham_phi1_red, u1_polynomial, u1_sinh
from rsvd.reduction import (
    CouplingParams,
    ReducedPoint,
    build_params,
    constraint_residual,
    extract_invariants,
    main_constraint_residual,
    make_rng,
    moduli_closed_form,
    moduli_oracle,
    moduli_split_form,
    reconstruct_point,
    sample_domain,
    spectral_frame,
    surface_blocks,
    surface_residual,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

INVOLUTIVITY_MAX_N = 3
INVOLUTIVITY_MAX_L = 3
INVOLUTIVITY_PAIRS = tuple(
    (family, l1, l2)
    for family in ("F", "Phi")
    for l1 in range(1, INVOLUTIVITY_MAX_L + 1)
    for l2 in range(l1 + 1, INVOLUTIVITY_MAX_L + 1)
)
SURFACE_SENSITIVITY = 1e-4


@dataclass
class SuiteResult:
    """Outcome of one suite.

    Attributes:
        name: Suite name, also the key of its tolerance.
        max_error: Largest observed error over all samples.
        tolerance: Acceptance bound.
        samples: Number of random points checked.
        seconds: Wall time.
        error: Message of an unexpected library error, if one aborted the suite.
    """

    name: str
    max_error: float
    tolerance: float
    samples: int
    seconds: float = 0.0
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and bool(np.isfinite(self.max_error)) and self.max_error <= self.tolerance


@dataclass
class SuiteContext:
    """Everything a suite needs: the validated config and derived parameters."""

    config: RunConfig
    params: CouplingParams

    def rng(self, index: int) -> np.random.Generator:
        return make_rng(self.config.seed + index)

    def sample_lambda(self, index: int, params: Optional[CouplingParams] = None) -> np.ndarray:
        sampling = self.config.sampling
        return sample_domain(
            "lambda",
            params or self.params,
            self.rng(index),
            margin_fraction=sampling.margin_fraction,
            spread=sampling.spread,
            max_attempts=sampling.max_attempts,
        )

    def sample_point(self, index: int) -> ReducedPoint:
        lam = self.sample_lambda(index)
        theta = self.rng(10_000 + index).uniform(0.0, 2 * np.pi, size=self.params.n)
        return ReducedPoint(lam=lam, theta=theta)

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """Apply ``fn`` to ``items`` in order, on a thread pool when ``workers > 1``."""
        if self.config.workers == 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
            return list(pool.map(fn, items))


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / max(1.0, float(np.linalg.norm(b))))


def suite_decomposition(ctx: SuiteContext) -> tuple[float, int]:
    """Iwasawa factorizations g = k b and g = b_L k_R on random group elements."""
    n = ctx.params.n
    identity = np.eye(2 * n)

    def check(index: int) -> float:
        g = random_group_element(n, ctx.rng(index))
        point = decompose_kb(g)
        b_left, k_right = decompose_bk(g)
        return max(
            _relative(point.group_element(), g),
            float(np.linalg.norm(point.k.conj().T @ point.k - identity)),
            float(np.linalg.norm(np.tril(point.b, -1))),
            _relative(b_left @ k_right, g),
            float(np.linalg.norm(np.tril(b_left, -1))),
        )

    errors = ctx.map(check, range(ctx.config.samples))
    return max(errors), len(errors)


def _triangular(first: np.ndarray, second: np.ndarray, coupling: np.ndarray) -> np.ndarray:
    """Upper block triangular matrix with diagonal blocks ``first``, ``second``."""
    n = first.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, :n] = first
    out[:n, n:] = coupling
    out[n:, n:] = second
    return out


def suite_surface(ctx: SuiteContext) -> tuple[float, int]:
    """Both block identities of the constraint surface on forward-built elements.

    For each side an element is assembled from the prescribed blocks, a
    random off-diagonal block and a random unitary; its residual must vanish
    and must exceed SURFACE_SENSITIVITY once a block is scaled by 1.1.
    """
    p = ctx.params
    n = p.n
    blocks = surface_blocks(p)

    def check(index: int) -> float:
        rng = ctx.rng(index)
        k = decompose_kb(random_group_element(n, rng)).k
        coupling = 0.5 * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        elements = {
            "right": k @ _triangular(*blocks["right"], coupling),
            "left": _triangular(*blocks["left"], coupling) @ k,
        }
        worst = 0.0
        for side, g in elements.items():
            scale = max(1.0, float(np.linalg.norm(g)) ** 4)
            worst = max(worst, surface_residual(g, p)[side] / scale)
            first, second = blocks[side]
            perturbed = np.linalg.norm(constraint_residual(side, g, (1.1 * first, second)))  # type: ignore[arg-type]
            if perturbed <= SURFACE_SENSITIVITY:
                worst = max(worst, 1.0)
        return worst

    errors = ctx.map(check, range(ctx.config.samples))
    return max(errors), len(errors)


def suite_involutivity(ctx: SuiteContext) -> tuple[float, int]:
    """Finite-difference Poisson brackets {H_l1, H_l2} within each family, l <= 3, on Ginibre points.

    Each bracket is divided by max(1, |grad H_l1| |grad H_l2|).
    """
    n = min(ctx.params.n, INVOLUTIVITY_MAX_N)
    functions = {
        (family, l): master_hamiltonian(family, l)  # type: ignore[arg-type]
        for family in ("F", "Phi")
        for l in range(1, INVOLUTIVITY_MAX_L + 1)
    }

    def check(index: int) -> float:
        g = random_group_element(n, ctx.rng(index))
        grads = {key: gradients(fn, g) for key, fn in functions.items()}
        norms = {key: float(np.hypot(np.linalg.norm(left), np.linalg.norm(right))) for key, (left, right) in grads.items()}
        return max(
            abs(bracket_from_gradients(grads[(family, l1)], grads[(family, l2)]))
            / max(1.0, norms[(family, l1)] * norms[(family, l2)])
            for family, l1, l2 in INVOLUTIVITY_PAIRS
        )

    errors = ctx.map(check, range(ctx.config.samples))
    return max(errors), len(errors)


def suite_oracle(ctx: SuiteContext) -> tuple[float, int]:
    """Closed-form moduli against the dense Cauchy solve and the sinh product form."""
    p = ctx.params

    def check(index: int) -> float:
        lam = ctx.sample_lambda(index)
        lam_full = np.concatenate([np.exp(2 * lam), np.exp(-2 * lam)])
        closed = moduli_closed_form(lam_full, p)
        return max(
            _relative(closed, moduli_oracle(lam_full, p)),
            _relative(moduli_split_form(lam, p), closed),
        )

    errors = ctx.map(check, range(ctx.config.samples))
    return max(errors), len(errors)


def suite_reconstruction(ctx: SuiteContext) -> tuple[float, int]:
    """Residuals of reconstructed triples and the extraction round trip."""
    p = ctx.params
    inv = involution(p.n)

    def check(index: int) -> float:
        rp = ctx.sample_point(index)
        triple = reconstruct_point(rp, p)
        frame = spectral_frame(p, Lambda=np.exp(2 * rp.lam))
        w_tilde = frame.rho @ triple.w
        q = frame.rho @ triple.L @ inv @ frame.rho
        spectrum = np.sort(np.linalg.eigvalsh(triple.Omega))
        back = extract_invariants(triple, p)
        scale = max(1.0, float(np.linalg.norm(triple.Omega)) ** 2)
        theta_gap = np.angle(np.exp(1j * (back.theta - rp.theta)))
        return max(
            float(np.linalg.norm(main_constraint_residual(triple, p))) / scale,
            float(np.linalg.norm(q @ w_tilde - w_tilde)),
            triple.fixed_vector_error(),
            triple.quasi_hermiticity_error(),
            _relative(spectrum, np.sort(frame.Lambda_full)),
            float(np.max(np.abs(back.lam - rp.lam))),
            float(np.max(np.abs(theta_gap))),
        )

    errors = ctx.map(check, range(ctx.config.samples))
    return max(errors), len(errors)


def suite_theorem(ctx: SuiteContext) -> tuple[float, int]:
    """Closed-form reduced Phi_1 against half the trace of the reconstructed L."""
    p = ctx.params

    def check(index: int) -> float:
        rp = ctx.sample_point(index)
        direct = free_hamiltonian("Phi", 1, reconstruct_point(rp, p))
        return abs(ham_phi1_red(rp, p) - direct) / max(1.0, abs(direct))

    errors = ctx.map(check, range(ctx.config.samples))
    return max(errors), len(errors)


def suite_darboux(ctx: SuiteContext) -> tuple[float, int]:
    """Two-route comparison of the Phi_1 flow from sampled points."""
    config = ctx.config

    def check(index: int) -> float:
        report = darboux_experiment(ctx.sample_point(index), ctx.params, config.t_end, config.dt, method=config.method)
        return report.max_deviation

    errors = ctx.map(check, range(config.dynamic_samples))
    return max(errors), len(errors)


def suite_duality(ctx: SuiteContext) -> tuple[float, int]:
    """Linear angle motion under F_l; lambda drift and theta deviation are scaled to one tolerance."""
    config = ctx.config
    tol = config.tolerances
    jobs = [(index, l) for index in range(config.dynamic_samples) for l in range(1, config.l_max + 1)]

    def check(job: tuple[int, int]) -> float:
        index, l = job
        report = duality_experiment(ctx.sample_point(index), ctx.params, l=l, t_end=config.t_end)
        return max(
            report.lambda_deviation / tol.duality_lambda,
            report.theta_deviation / tol.duality_theta,
        )

    errors = ctx.map(check, jobs)
    return max(errors), len(errors)


def suite_dual_identity(ctx: SuiteContext) -> tuple[float, int]:
    """Two forms of U_1 on dual-domain samples, and the lower bound F_1 >= n."""
    p = ctx.params
    sampling = ctx.config.sampling

    def check(index: int) -> float:
        phat = sample_domain(
            "phat", p, ctx.rng(index), sampling.margin_fraction, sampling.spread, sampling.max_attempts
        )
        qhat = ctx.rng(10_000 + index).uniform(0.0, 2 * np.pi, size=p.n)
        poly = u1_polynomial(phat, p)
        identity_error = _relative(u1_sinh(phat, p), poly)
        shortfall = max(0.0, p.n - ham_f1_dual(DualPoint(phat, qhat), p))
        return max(identity_error, shortfall)

    errors = ctx.map(check, range(ctx.config.samples))
    return max(errors), len(errors)


def suite_bounds(ctx: SuiteContext) -> tuple[float, int]:
    """Spectral bound |Phi_1| <= n on lambda-domain samples; reports the largest excess."""
    p = ctx.params

    def check(index: int) -> float:
        return max(0.0, abs(ham_phi1_red(ctx.sample_point(index), p)) - p.n)

    errors = ctx.map(check, range(ctx.config.samples))
    return max(errors), len(errors)


Suite = Callable[[SuiteContext], tuple[float, int]]

SUITES: dict[str, Suite] = {
    "decomposition": suite_decomposition,
    "surface": suite_surface,
    "involutivity": suite_involutivity,
    "oracle": suite_oracle,
    "reconstruction": suite_reconstruction,
    "theorem": suite_theorem,
    "darboux": suite_darboux,
    "duality": suite_duality,
    "dual_identity": suite_dual_identity,
    "bounds": suite_bounds,
}


def suite_tolerance(name: str, config: RunConfig) -> float:
    """Tolerance a suite's reported error is compared with.

    The duality suite reports its deviations already divided by their
    tolerances, so it is compared with 1.
    """
    tol = config.tolerances
    if name == "darboux" and config.n > 1:
        return tol.darboux_coupled
    if name == "duality":
        return 1.0
    return float(getattr(tol, name))


def run_suite(name: str, config: RunConfig, params: Optional[CouplingParams] = None) -> SuiteResult:
    """Run one named suite, turning library errors into a failed result."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    params = params or build_params(config.n, config.u, config.v, config.mu)
    tolerance = suite_tolerance(name, config)

    started = time.perf_counter()
    logger.debug("Running suite %s", name)
    try:
        max_error, samples = SUITES[name](SuiteContext(config=config, params=params))
        result = SuiteResult(name, max_error, tolerance, samples)
    except (RSVDError, RuntimeError) as e:
        logger.warning("Suite %s aborted: %s", name, e)
        result = SuiteResult(name, float("nan"), tolerance, 0, error=str(e))
    result.seconds = time.perf_counter() - started
    logger.debug("Suite %s: max error %.3e (tol %.1e)", name, result.max_error, tolerance)
    return result


def run_suites(
    config: RunConfig,
    names: Optional[Iterable[str]] = None,
    progress_callback: Optional[Callable[[SuiteResult], None]] = None,
) -> list[SuiteResult]:
    """Run the selected suites (all by default) in a fixed order.

    Args:
        config: Validated run configuration.
        names: Subset of suite names; defaults to every suite.
        progress_callback: Called with each finished result.

    Returns:
        One result per suite in the order requested.
    """
    params = build_params(config.n, config.u, config.v, config.mu)
    results = []
    for name in names or SUITES:
        result = run_suite(name, config, params)
        results.append(result)
        if progress_callback:
            progress_callback(result)
    return results
