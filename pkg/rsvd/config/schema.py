"""
Pydantic models for rsvd run configuration.

Provides type-safe configuration with validation.
"""

import math
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class ToleranceConfig(BaseModel):
    """Acceptance tolerances of the verification suites."""

    decomposition: float = Field(
        default=1e-10,
        gt=0,
        description="Max |kb - g| and unitarity error of the Iwasawa factors",
    )
    surface: float = Field(
        default=1e-10,
        gt=0,
        description="Scaled residual of the constraint-surface block identities",
    )
    involutivity: float = Field(
        default=1e-6,
        gt=0,
        description="Max |{H_1, H_2}| over max(1, |grad H_1| |grad H_2|) for commuting free Hamiltonians",
    )
    oracle: float = Field(
        default=1e-10,
        gt=0,
        description="Relative error between closed-form, split and solved moduli",
    )
    reconstruction: float = Field(
        default=1e-9,
        gt=0,
        description="Residuals of reconstructed triples and the extraction round trip",
    )
    theorem: float = Field(
        default=1e-9,
        gt=0,
        description="Relative error between reduced Phi_1 and tr L / 2",
    )
    darboux: float = Field(
        default=1e-6,
        gt=0,
        description="Two-route coordinate deviation at n = 1",
    )
    darboux_coupled: float = Field(
        default=1e-5,
        gt=0,
        description="Two-route coordinate deviation at n >= 2",
    )
    duality_lambda: float = Field(
        default=1e-9,
        gt=0,
        description="Drift of lambda along the F_l flow",
    )
    duality_theta: float = Field(
        default=1e-7,
        gt=0,
        description="Deviation of theta from linear motion along the F_l flow",
    )
    dual_identity: float = Field(
        default=1e-12,
        gt=0,
        description="Agreement of the two forms of U_1",
    )
    bounds: float = Field(
        default=1e-12,
        ge=0,
        description="Allowed excess of |Phi_1| over n",
    )
    conservation: float = Field(
        default=1e-8,
        gt=0,
        description="Drift of H along its own canonical flow",
    )


class LimitConfig(BaseModel):
    """Rational-limit convergence study."""

    ladder: list[float] = Field(
        default_factory=lambda: [1e-1, 1e-2, 1e-3, 1e-4, 1e-5],
        min_length=2,
        description="Scaling factors r, decreasing towards 0",
    )
    fit_tail: int = Field(
        default=3,
        ge=2,
        description="Number of smallest factors r the slope is fitted on",
    )
    slope_min: float = Field(default=0.9, description="Lower acceptance bound of the fitted slope")
    slope_max: float = Field(default=1.1, description="Upper acceptance bound of the fitted slope")

    @model_validator(mode="after")
    def _check_ladder(self) -> "LimitConfig":
        if any(r <= 0 for r in self.ladder):
            raise ValueError("limit.ladder entries must be positive")
        if self.slope_min >= self.slope_max:
            raise ValueError("limit.slope_min must be below limit.slope_max")
        return self


class SamplingConfig(BaseModel):
    """Rejection sampling of domain points."""

    margin_fraction: float = Field(
        default=0.1,
        ge=0,
        lt=1,
        description="Distance kept from every domain facet, in units of mu",
    )
    spread: float = Field(
        default=1.0,
        gt=0,
        description="Extra room per coordinate in the sampling box",
    )
    max_attempts: int = Field(
        default=10_000,
        gt=0,
        description="Rejection budget per sample",
    )


class RunConfig(BaseModel):
    """Root rsvd configuration."""

    n: int = Field(default=2, ge=1, le=8, description="Number of particles")
    u: float = Field(default=0.1, description="Left boundary coupling")
    v: float = Field(default=0.3, description="Right boundary coupling")
    mu: float = Field(default=math.log(2), gt=0, description="Pair interaction coupling")
    seed: int = Field(default=42, ge=0, lt=2**64, description="Seed of the counter-based generator")
    t_end: float = Field(default=0.1, ge=0, description="Integration horizon")
    dt: float = Field(default=1e-4, gt=0, description="Fixed step size")
    method: Literal["rk4", "stormer-split"] = Field(
        default="rk4",
        description="Integrator for reduced Hamiltonians",
    )
    lambda_: Optional[list[float]] = Field(
        default=None,
        alias="lambda",
        description="Initial lambda; sampled from the domain when omitted",
    )
    theta: Optional[list[float]] = Field(default=None, description="Initial theta (defaults to zeros)")
    phat: Optional[list[float]] = Field(default=None, description="Initial dual positions")
    qhat: Optional[list[float]] = Field(default=None, description="Initial dual angles (defaults to zeros)")
    l_max: int = Field(default=2, ge=1, description="Largest Hamiltonian index used by duality checks")
    samples: int = Field(default=20, ge=1, description="Random points per algebraic suite")
    dynamic_samples: int = Field(default=20, ge=1, description="Random initial points per dynamical suite")
    workers: int = Field(default=1, ge=1, description="Worker threads for independent seeds")
    output: Optional[Path] = Field(default=None, description="Output file; stdout when omitted")
    format: Literal["csv", "json"] = Field(default="csv", description="Output file format")
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    limit: LimitConfig = Field(default_factory=LimitConfig)
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)

    model_config = {
        "populate_by_name": True,
        "extra": "forbid",
    }

    @model_validator(mode="after")
    def _check_initial_point(self) -> "RunConfig":
        if self.lambda_ is not None and self.phat is not None:
            raise ValueError("lambda and phat are mutually exclusive")
        if self.theta is not None and self.lambda_ is None:
            raise ValueError("theta requires lambda")
        if self.qhat is not None and self.phat is None:
            raise ValueError("qhat requires phat")
        for name, values in (("lambda", self.lambda_), ("theta", self.theta), ("phat", self.phat), ("qhat", self.qhat)):
            if values is not None and len(values) != self.n:
                raise ValueError(f"{name} must have n={self.n} entries, got {len(values)}")
        return self

    @property
    def side(self) -> Literal["lambda", "phat"]:
        """Which pair of canonical coordinates the initial point uses."""
        return "phat" if self.phat is not None else "lambda"
