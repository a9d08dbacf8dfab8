"""
Tests for rsvd verification suites.
"""

import math

import numpy as np
import pytest

from rsvd.config.schema import RunConfig, ToleranceConfig
from rsvd.verify import SUITES, SuiteContext, SuiteResult, run_suite, run_suites, suite_tolerance
from rsvd.verify.suites import INVOLUTIVITY_PAIRS
from rsvd.reduction import build_params


@pytest.fixture
def config():
    """A small configuration that keeps every suite fast."""
    return RunConfig(n=2, u=0.1, v=0.3, mu=math.log(2), samples=4, dynamic_samples=1, t_end=0.01, dt=1e-3, l_max=1)


class TestSuiteResult:
    """Tests for the result record."""

    def test_passed(self):
        """Test pass/fail from error, tolerance and aborts."""
        assert SuiteResult("oracle", 1e-12, 1e-10, 5).passed
        assert not SuiteResult("oracle", 1e-9, 1e-10, 5).passed
        assert not SuiteResult("oracle", float("nan"), 1e-10, 0).passed
        assert not SuiteResult("oracle", 0.0, 1e-10, 5, error="boom").passed


class TestSuiteTolerance:
    """Tests for tolerance selection."""

    def test_darboux_depends_on_n(self, config):
        """Test the coupled tolerance applies from n = 2 on."""
        assert suite_tolerance("darboux", config) == config.tolerances.darboux_coupled
        assert suite_tolerance("darboux", config.model_copy(update={"n": 1})) == config.tolerances.darboux

    def test_duality_is_normalized(self, config):
        """Test the duality suite compares ratios with 1."""
        assert suite_tolerance("duality", config) == 1.0

    def test_named_tolerance(self, config):
        """Test the other suites use their own tolerance."""
        assert suite_tolerance("oracle", config) == 1e-10

    def test_every_suite_has_a_tolerance(self, config):
        """Test each registered suite maps to a tolerance."""
        for name in SUITES:
            assert suite_tolerance(name, config) > 0
        assert set(SUITES) - {"duality"} <= set(ToleranceConfig.model_fields)


class TestSuites:
    """Tests for the individual suites on a small configuration."""

    @pytest.mark.parametrize(
        "name",
        ["decomposition", "surface", "oracle", "reconstruction", "theorem", "dual_identity", "bounds"],
    )
    def test_algebraic_suites_pass(self, config, name):
        """Test the algebraic suites pass at default tolerances."""
        result = run_suite(name, config)
        assert result.passed, f"{name}: {result.max_error} > {result.tolerance} ({result.error})"
        assert result.samples == config.samples

    def test_involutivity_passes(self, config):
        """Test the bracket suite on one Ginibre point."""
        result = run_suite("involutivity", config.model_copy(update={"samples": 1}))
        assert result.passed
        assert result.samples == 1

    def test_involutivity_covers_cubic_pairs(self):
        """Test every pair l1 < l2 <= 3 in both families is checked."""
        for family in ("F", "Phi"):
            assert {(family, 1, 2), (family, 1, 3), (family, 2, 3)} <= set(INVOLUTIVITY_PAIRS)
        assert len(INVOLUTIVITY_PAIRS) == 6

    def test_involutivity_is_not_capped(self, config, monkeypatch):
        """Test the suite visits every configured sample."""
        import rsvd.verify.suites as suites

        monkeypatch.setattr(suites, "gradients", lambda fn, g: (np.zeros_like(g), np.zeros_like(g)))
        result = run_suite("involutivity", config.model_copy(update={"samples": 20}))
        assert result.samples == 20
        assert result.max_error == 0.0

    def test_dynamic_sample_default(self):
        """Test the dynamical suites start from 20 points by default."""
        assert RunConfig().dynamic_samples == 20

    def test_surface_detects_wrong_blocks(self, config, monkeypatch):
        """Test the surface suite fails when the residual ignores the prescribed blocks."""
        import rsvd.verify.suites as suites

        monkeypatch.setattr(suites, "constraint_residual", lambda side, g, blocks: np.zeros((4, 4)))
        assert not run_suite("surface", config).passed

    def test_darboux_passes(self, config):
        """Test the two-route suite."""
        assert run_suite("darboux", config).passed

    def test_duality_passes(self):
        """Test the duality suite for one particle."""
        config = RunConfig(n=1, u=0.0, v=0.0, dynamic_samples=1, t_end=0.05, l_max=2)
        assert run_suite("duality", config).passed

    def test_forced_failure(self, config):
        """Test an impossible tolerance makes the suite fail."""
        tight = config.model_copy(update={"tolerances": ToleranceConfig(theorem=1e-300)})
        result = run_suite("theorem", tight)
        assert result.max_error > 0
        assert not result.passed

    def test_unknown_suite(self, config):
        """Test an unknown name raises KeyError."""
        with pytest.raises(KeyError):
            run_suite("nonsense", config)

    def test_reproducible(self, config):
        """Test results depend only on the seed."""
        first = run_suite("oracle", config)
        second = run_suite("oracle", config)
        assert first.max_error == second.max_error

    def test_workers_do_not_change_results(self, config):
        """Test threaded evaluation gives the same errors."""
        serial = run_suite("theorem", config)
        threaded = run_suite("theorem", config.model_copy(update={"workers": 3}))
        assert serial.max_error == threaded.max_error


class TestRunSuites:
    """Tests for running several suites."""

    def test_progress_callback(self, config):
        """Test the callback sees every result in order."""
        seen = []
        results = run_suites(config, ["oracle", "bounds"], progress_callback=seen.append)

        assert [r.name for r in results] == ["oracle", "bounds"]
        assert seen == results

    def test_context_sampling(self, config):
        """Test context samples are reproducible per index."""
        ctx = SuiteContext(config=config, params=build_params(2, 0.1, 0.3, math.log(2)))
        assert (ctx.sample_lambda(3) == ctx.sample_lambda(3)).all()
        assert ctx.sample_point(1).n == 2
