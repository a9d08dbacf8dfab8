"""Phase-space domains of the two reduced systems and sampling from them."""

import logging
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from numpy.typing import ArrayLike

from rsvd.core.errors import DomainViolation
from rsvd.reduction.params import CouplingParams

logger = logging.getLogger(__name__)

DomainKind = Literal["lambda", "phat"]

DEFAULT_MARGIN_FRACTION = 0.1
DEFAULT_SPREAD = 1.0
DEFAULT_MAX_ATTEMPTS = 10_000


@dataclass
class DomainReport:
    """Outcome of a domain membership test.

    ``slack`` is the smallest distance to any facet (negative outside);
    ``violation`` names the first violated inequality.
    """

    inside: bool
    slack: float
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.inside


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator used by every sampling routine."""
    return np.random.Generator(np.random.Philox(seed))


def _facets(kind: DomainKind, point: np.ndarray, p: CouplingParams) -> list[tuple[str, float]]:
    """Named slacks of each defining inequality, in reporting order."""
    facets: list[tuple[str, float]] = []
    if kind == "lambda":
        for i in range(point.size - 1):
            facets.append((f"lambda_{i + 1} - lambda_{i + 2} > mu", point[i] - point[i + 1] - p.mu))
        bound = max(abs(p.u), abs(p.v))
        facets.append((f"lambda_{point.size} > max(|u|, |v|)", point[-1] - bound))
    elif kind == "phat":
        bound = min(0.0, p.v - p.u)
        facets.append(("phat_1 < min(0, v - u)", bound - point[0]))
        for i in range(point.size - 1):
            facets.append((f"phat_{i + 1} - phat_{i + 2} > mu", point[i] - point[i + 1] - p.mu))
    else:
        raise ValueError(f"kind must be 'lambda' or 'phat', got {kind!r}")
    return facets


def domain_check(
    kind: DomainKind,
    point: ArrayLike,
    p: CouplingParams,
    margin: float = 0.0,
) -> DomainReport:
    """Test the strict inequalities defining the domain of ``kind``.

    Args:
        kind: ``"lambda"`` for the reduced positions, ``"phat"`` for the dual ones.
        point: Real n-vector.
        p: Coupling parameters.
        margin: Extra distance required from every facet.

    Returns:
        A report whose truth value is the membership result.
    """
    values = np.asarray(point, dtype=float).reshape(-1)
    if values.shape != (p.n,):
        return DomainReport(False, -np.inf, f"{kind} must have length {p.n}")
    if not np.all(np.isfinite(values)):
        return DomainReport(False, -np.inf, f"{kind} must be finite")

    facets = _facets(kind, values, p)
    slack = min(value for _, value in facets)
    for name, value in facets:
        if value <= margin:
            return DomainReport(False, slack, name)
    return DomainReport(True, slack)


def require_domain(kind: DomainKind, point: ArrayLike, p: CouplingParams) -> None:
    """Raise ``DomainViolation`` unless ``point`` is strictly inside the domain."""
    report = domain_check(kind, point, p)
    if not report:
        raise DomainViolation(f"{kind} = {np.asarray(point).tolist()} violates {report.violation}", report.violation)


def sample_domain(
    kind: DomainKind,
    p: CouplingParams,
    rng: np.random.Generator,
    margin_fraction: float = DEFAULT_MARGIN_FRACTION,
    spread: float = DEFAULT_SPREAD,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> np.ndarray:
    """Draw a point of the domain by rejection from a bounding box.

    Accepted points keep a distance ``mu * margin_fraction`` from every facet.

    Args:
        kind: Which domain to sample.
        p: Coupling parameters.
        rng: Source of randomness, normally from :func:`make_rng`.
        margin_fraction: Facet margin in units of ``mu``.
        spread: Extra room per coordinate beyond the minimal spacing.
        max_attempts: Rejection budget.

    Returns:
        A strictly ordered (decreasing) n-vector.

    Raises:
        RuntimeError: If no point is accepted within ``max_attempts`` draws.
    """
    margin = p.mu * margin_fraction
    width = p.n * (p.mu + margin + spread)

    if kind == "lambda":
        low = max(abs(p.u), abs(p.v))
        high = low + width
    else:
        high = min(0.0, p.v - p.u)
        low = high - width

    for attempt in range(1, max_attempts + 1):
        candidate = np.sort(rng.uniform(low, high, size=p.n))[::-1].copy()
        if domain_check(kind, candidate, p, margin=margin):
            logger.debug("Sampled %s after %d attempts", kind, attempt)
            return candidate

    raise RuntimeError(f"no {kind} point accepted after {max_attempts} attempts")
