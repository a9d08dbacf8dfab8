"""
Duality command: read the reduced dynamics two ways from one initial point.

For every l up to --l-max the exact F_l flow on triples must keep lambda
fixed and advance theta linearly with slope 2 sinh(2 l lambda). The Phi_1
flow on triples, read through the invariants, must match the canonical
flow of the reduced Phi_1.
"""

import sys

import click

from rsvd.cli.common import emit_table, fail, initial_point, params_from, resolve_config, run_options, status
from rsvd.dynamics import darboux_experiment, duality_experiment
from rsvd.models import DualPoint

COLUMNS = (
    "experiment",
    "l",
    "j",
    "lambda",
    "expected_slope",
    "observed_slope",
    "lambda_deviation",
    "theta_deviation",
    "passed",
)


@click.command()
@run_options
@click.option("--l-max", type=int, help="Largest Hamiltonian index F_l to check")
@click.option("--time-samples", "fit_samples", type=click.IntRange(min=2), default=11, show_default=True, help="Time samples per F_l flow")
@click.option("--flip-sign", is_flag=True, hidden=True)
@click.pass_context
def duality(ctx: click.Context, fit_samples: int, flip_sign: bool, **flags) -> None:
    """Check that (lambda, theta) are action-angle coordinates.

    Writes one row per l and particle for the F_l flows and one row for the
    Phi_1 comparison. Exits with status 1 if any check fails.

    Example:
        rsvd duality --n 1 --u 0 --v 0 --mu 0.6931 --lambda 0.6931 --theta 0 --l-max 2
    """
    try:
        config = resolve_config(ctx, **flags)
        params = params_from(config)
        rp0 = initial_point(config, params)
        if isinstance(rp0, DualPoint):
            raise click.UsageError("duality starts from lambda/theta, not phat/qhat")

        tol = config.tolerances
        reports = []
        with click.progressbar(range(1, config.l_max + 1), label="F_l flows", file=click.get_text_stream("stderr")) as levels:
            for l in levels:
                reports.append(
                    duality_experiment(
                        rp0,
                        params,
                        l=l,
                        t_end=config.t_end,
                        samples=fit_samples,
                        lambda_tolerance=tol.duality_lambda,
                        theta_tolerance=tol.duality_theta,
                    )
                )

        darboux = darboux_experiment(
            rp0,
            params,
            t_end=config.t_end,
            dt=config.dt,
            tolerance=tol.darboux if config.n == 1 else tol.darboux_coupled,
            method=config.method,
            orientation=-1.0 if flip_sign else 1.0,
        )
    except Exception as e:
        fail(ctx, e)
        return

    rows = []
    for report in reports:
        for j in range(config.n):
            rows.append(
                (
                    "F_flow",
                    report.l,
                    j + 1,
                    rp0.lam[j],
                    report.expected_slopes[j],
                    report.observed_slopes[j],
                    report.lambda_deviation,
                    report.theta_deviation,
                    report.passed,
                )
            )
    rows.append(
        (
            "darboux",
            1,
            None,
            None,
            None,
            None,
            darboux.lambda_deviation,
            darboux.theta_deviation,
            darboux.passed,
        )
    )
    emit_table(COLUMNS, rows, config, meta={"flip_sign": flip_sign, "darboux_tolerance": darboux.tolerance})

    for report in reports:
        verdict = "PASS" if report.passed else "FAIL"
        status(
            config,
            f"  F_{report.l}  {verdict}  lambda drift {report.lambda_deviation:.2e}, theta deviation {report.theta_deviation:.2e}",
        )
    verdict = "PASS" if darboux.passed else "FAIL"
    status(config, f"  Phi_1 {verdict}  two-route deviation {darboux.max_deviation:.2e} (tol {darboux.tolerance:.1e})")

    if not (darboux.passed and all(report.passed for report in reports)):
        sys.exit(1)
