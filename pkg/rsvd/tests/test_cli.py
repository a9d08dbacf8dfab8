"""
Tests for rsvd CLI.
"""

import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from rsvd.cli.common import format_cell
from rsvd.cli.limit import fitted_slope
from rsvd.cli.main import cli

LN2 = "0.69314718055994531"
GOLDEN = ["--n", "1", "--u", "0", "--v", "0", "--mu", LN2, "--lambda", LN2]


def _read_csv(path: Path) -> list[dict[str, str]]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


@pytest.fixture
def runner(tmp_path, monkeypatch):
    """CLI runner inside an empty directory so no stray config file is picked up."""
    monkeypatch.chdir(tmp_path)
    for name in ("RSVD_CONFIG", "RSVD_TOL_OVERRIDE", "RSVD_N", "RSVD_MU", "RSVD_FORMAT"):
        monkeypatch.delenv(name, raising=False)
    return CliRunner()


class TestCLIBasics:
    """Tests for basic CLI functionality."""

    def test_cli_version(self, runner):
        """Test --version flag."""
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "rsvd" in result.output.lower()

    def test_cli_help(self, runner):
        """Test --help flag."""
        result = runner.invoke(cli, ["--help"])
        assert result.exit_code == 0
        for command in ("verify", "evolve", "duality", "limit", "config"):
            assert command in result.output

    def test_cli_verbose_flag(self, runner):
        """Test --verbose flag is accepted."""
        result = runner.invoke(cli, ["--verbose", "--help"])
        assert result.exit_code == 0

    def test_hidden_flag_not_listed(self, runner):
        """Test the negative-control flag is not advertised."""
        result = runner.invoke(cli, ["duality", "--help"])
        assert result.exit_code == 0
        assert "--flip-sign" not in result.output
        assert "--l-max" in result.output

    def test_broken_config_file(self, runner, tmp_path):
        """Test an invalid config file stops the command with exit code 1."""
        config_path = tmp_path / "bad.yaml"
        config_path.write_text("mu: -1\n")
        result = runner.invoke(cli, ["--config", str(config_path), "verify", "--suite", "oracle"])
        assert result.exit_code == 1
        assert "mu" in result.output

    def test_format_cell(self):
        """Test CSV cells carry 17 significant digits."""
        assert format_cell(0.1) == "0.10000000000000001"
        assert format_cell(3) == "3"
        assert format_cell(True) == "1"
        assert format_cell(None) == ""


class TestConfigCommands:
    """Tests for config subcommands."""

    def test_config_init(self, runner, tmp_path):
        """Test config init writes a loadable file and refuses to overwrite."""
        result = runner.invoke(cli, ["config", "init"])
        assert result.exit_code == 0
        assert (tmp_path / "rsvd-config.yaml").exists()

        result = runner.invoke(cli, ["config", "init"])
        assert result.exit_code == 1

        result = runner.invoke(cli, ["config", "init", "--force"])
        assert result.exit_code == 0

    def test_config_show_json(self, runner):
        """Test config show prints the resolved configuration."""
        result = runner.invoke(cli, ["config", "show", "--format", "json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["n"] == 2

    def test_config_validate(self, runner, tmp_path):
        """Test validation accepts good files and rejects points outside the domain."""
        good = tmp_path / "good.yaml"
        good.write_text("n: 1\nu: 0.1\nv: 0.6\nlambda: [0.8]\n")
        result = runner.invoke(cli, ["config", "validate", "--config-file", str(good)])
        assert result.exit_code == 0
        assert "valid" in result.output

        bad = tmp_path / "bad.yaml"
        bad.write_text("n: 1\nu: 0.1\nv: 0.6\nlambda: [0.5]\n")
        result = runner.invoke(cli, ["config", "validate", "--config-file", str(bad)])
        assert result.exit_code == 1


class TestVerifyCommand:
    """Tests for rsvd verify."""

    def test_selected_suites_pass(self, runner, tmp_path):
        """Test a passing run writes its report and exits 0."""
        output = tmp_path / "report.csv"
        result = runner.invoke(
            cli,
            ["verify", "--suite", "oracle", "--suite", "theorem", "--samples", "5", "--output", str(output)],
        )
        assert result.exit_code == 0, result.output
        rows = _read_csv(output)
        assert [row["suite"] for row in rows] == ["oracle", "theorem"]
        assert all(row["passed"] == "1" for row in rows)

    def test_tolerance_override_forces_failure(self, runner, monkeypatch):
        """Test RSVD_TOL_OVERRIDE makes the oracle suite fail."""
        monkeypatch.setenv("RSVD_TOL_OVERRIDE", "oracle=1e-300")
        result = runner.invoke(cli, ["verify", "--suite", "oracle", "--n", "2", "--samples", "5"])
        assert result.exit_code == 1
        assert "oracle" in result.output

    def test_bad_override_rejected(self, runner, monkeypatch):
        """Test an unknown tolerance name is a configuration error."""
        monkeypatch.setenv("RSVD_TOL_OVERRIDE", "nonsense=1")
        result = runner.invoke(cli, ["verify", "--suite", "oracle"])
        assert result.exit_code == 1

    def test_invalid_mu_flag(self, runner):
        """Test mu <= 0 is rejected before any computation."""
        result = runner.invoke(cli, ["verify", "--mu", "0", "--suite", "oracle"])
        assert result.exit_code == 1
        assert "Error" in result.output


class TestEvolveCommand:
    """Tests for rsvd evolve."""

    def test_golden_trajectory(self, runner, tmp_path):
        """Test the n = 1 trajectory header, initial row and conservation."""
        output = tmp_path / "run" / "traj.csv"
        result = runner.invoke(
            cli, ["evolve", *GOLDEN, "--theta", "0", "--t-end", "0.1", "--dt", "0.001", "--output", str(output)]
        )
        assert result.exit_code == 0, result.output

        rows = _read_csv(output)
        assert list(rows[0])[:5] == ["t", "lambda_1", "theta_1", "H", "domain_slack"]
        assert len(rows) == 101
        assert float(rows[0]["H"]) == pytest.approx(1.0, abs=1e-12)
        assert float(rows[0]["F_1"]) == pytest.approx(2.125, abs=1e-12)
        energies = [float(row["H"]) for row in rows]
        assert max(energies) - min(energies) < 1e-8

    def test_dual_trajectory_json(self, runner, tmp_path):
        """Test the dual flow from (phat, qhat) written as JSON."""
        output = tmp_path / "dual.json"
        result = runner.invoke(
            cli,
            [
                "evolve", "--n", "1", "--u", "0", "--v", "0", "--mu", LN2,
                "--phat=-" + LN2, "--qhat", "0", "--t-end", "0.01", "--dt", "0.001",
                "--format", "json", "--output", str(output),
            ],
        )
        assert result.exit_code == 0, result.output

        document = json.loads(output.read_text())
        assert document["columns"][:3] == ["t", "phat_1", "qhat_1"]
        assert document["rows"][0][3] == pytest.approx(1.0)
        assert document["meta"]["hamiltonian"] == "F_1_dual"

    def test_outside_domain(self, runner):
        """Test a point outside the domain fails naming the inequality."""
        result = runner.invoke(cli, ["evolve", "--n", "2", "--lambda", "1.0,0.9", "--theta", "0,0"])
        assert result.exit_code == 1
        assert "lambda_1 - lambda_2 > mu" in result.output

    def test_sampled_start_is_reproducible(self, runner, tmp_path):
        """Test the sampled initial point depends only on the seed."""
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        for output in (first, second):
            result = runner.invoke(cli, ["evolve", "--seed", "5", "--t-end", "0.002", "--dt", "0.001", "--output", str(output)])
            assert result.exit_code == 0, result.output
        assert first.read_text() == second.read_text()


class TestDualityCommand:
    """Tests for rsvd duality."""

    def test_golden_slope(self, runner, tmp_path):
        """Test the slope column for n = 1 at lambda = ln 2."""
        output = tmp_path / "duality.csv"
        result = runner.invoke(
            cli, ["duality", *GOLDEN, "--theta", "1", "--l-max", "2", "--t-end", "0.05", "--dt", "0.001", "--output", str(output)]
        )
        assert result.exit_code == 0, result.output

        rows = _read_csv(output)
        first = rows[0]
        assert first["experiment"] == "F_flow"
        assert float(first["expected_slope"]) == pytest.approx(3.75)
        assert float(first["observed_slope"]) == pytest.approx(3.75, abs=1e-6)
        assert rows[-1]["experiment"] == "darboux"
        assert all(row["passed"] == "1" for row in rows)

    def test_flip_sign_fails(self, runner, tmp_path):
        """Test the negative control is caught."""
        output = tmp_path / "duality.csv"
        result = runner.invoke(
            cli,
            ["duality", *GOLDEN, "--theta", "1", "--l-max", "1", "--t-end", "0.05", "--dt", "0.001", "--flip-sign", "--output", str(output)],
        )
        assert result.exit_code == 1
        assert _read_csv(output)[-1]["passed"] == "0"

    def test_dual_start_rejected(self, runner):
        """Test duality needs a (lambda, theta) starting point."""
        result = runner.invoke(cli, ["duality", "--n", "1", "--phat=-1"])
        assert result.exit_code == 1


class TestLimitCommand:
    """Tests for rsvd limit."""

    def test_linear_convergence(self, runner, tmp_path):
        """Test the fitted slope is close to 1 and r = 0 comes first."""
        output = tmp_path / "limit.csv"
        result = runner.invoke(
            cli,
            ["limit", "--n", "1", "--u", "0.1", "--v", "0.6", "--mu", LN2, "--lambda", "0.8", "--theta", str(math.pi), "--output", str(output)],
        )
        assert result.exit_code == 0, result.output

        rows = _read_csv(output)
        assert float(rows[0]["r"]) == 0.0
        assert float(rows[0]["H_0"]) == pytest.approx(-0.75)
        assert [float(row["r"]) for row in rows[1:]] == [0.1, 0.01, 0.001, 0.0001, 1e-05]

    def test_slope_fitted_on_tail(self):
        """Test a pre-asymptotic first rung does not spoil the fitted slope."""
        ladder = np.array([1e-1, 1e-2, 1e-3, 1e-4])
        errors = np.array([0.287, 3.69e-3, 7.35e-4, 7.72e-5])

        assert fitted_slope(ladder, errors) > 1.1
        assert 0.9 <= fitted_slope(ladder, errors, tail=2) <= 1.1
        assert fitted_slope(ladder[::-1], errors[::-1], tail=2) == pytest.approx(fitted_slope(ladder, errors, tail=2))
        assert fitted_slope(ladder, errors, tail=10) == pytest.approx(fitted_slope(ladder, errors))

    def test_vanishing_error_gives_nan(self):
        """Test a zero error in the fitted tail yields nan."""
        assert math.isnan(fitted_slope(np.array([1e-2, 1e-3]), np.array([1e-2, 0.0])))

    @pytest.mark.parametrize("n", [2, 3])
    def test_default_config_converges(self, runner, tmp_path, n):
        """Test the default ladder passes from the sampled point for several particles."""
        output = tmp_path / "limit.json"
        result = runner.invoke(cli, ["limit", "--n", str(n), "--format", "json", "--output", str(output)])
        assert result.exit_code == 0, result.output

        document = json.loads(output.read_text())
        assert document["meta"]["passed"]
        assert 0.9 <= document["meta"]["slope"] <= 1.1

    @pytest.mark.parametrize(
        "n, lam",
        [(2, "2.0,1.0"), (3, "3.0,2.0,1.0")],
    )
    def test_explicit_point_converges(self, runner, tmp_path, n, lam):
        """Test convergence from a fixed point well inside the domain."""
        output = tmp_path / "limit.csv"
        result = runner.invoke(cli, ["limit", "--n", str(n), "--lambda", lam, "--theta", ",".join(["1.0"] * n), "--output", str(output)])
        assert result.exit_code == 0, result.output

        rows = _read_csv(output)
        errors = [float(row["abs_error"]) for row in rows[1:]]
        assert errors[-1] < errors[-2] < errors[-3]

    def test_potential_vanishes_without_boundary(self, runner, tmp_path):
        """Test the V_0 column is zero for u = v = 0."""
        output = tmp_path / "limit.csv"
        runner.invoke(cli, ["limit", *GOLDEN, "--output", str(output)])

        rows = _read_csv(output)
        assert len(rows) == 6
        assert all(float(row["V_0"]) == 0.0 for row in rows)

    def test_custom_ladder(self, runner, tmp_path):
        """Test --ladder replaces the scaling factors."""
        output = tmp_path / "limit.json"
        runner.invoke(
            cli,
            [
                "limit", "--n", "1", "--u", "0.1", "--v", "0.6", "--mu", LN2, "--lambda", "0.8",
                "--ladder", "0.05,0.005", "--format", "json", "--output", str(output),
            ],
        )
        document = json.loads(output.read_text())
        assert [row[0] for row in document["rows"]] == [0.0, 0.05, 0.005]
        assert "slope" in document["meta"]
