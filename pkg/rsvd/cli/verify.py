"""
Verify command: run the invariant suites and report pass or fail.
"""

import sys

import click

from rsvd.cli.common import emit_table, fail, resolve_config, run_options, status
from rsvd.verify import SUITES, SuiteResult, run_suites

REPORT_COLUMNS = ("suite", "max_error", "tolerance", "samples", "seconds", "passed", "error")


@click.command()
@run_options
@click.option(
    "--suite",
    "-s",
    "suites",
    multiple=True,
    type=click.Choice(list(SUITES)),
    help="Suite to run (can be specified multiple times; default: all)",
)
@click.option("--samples", type=int, help="Random points per algebraic suite")
@click.option("--dynamic-samples", type=int, help="Random points per dynamical suite")
@click.option("--l-max", type=int, help="Largest Hamiltonian index in the duality suite")
@click.pass_context
def verify(ctx: click.Context, suites: tuple[str, ...], **flags) -> None:
    """Check every invariant on seeded random samples.

    Exits with status 1 if any suite exceeds its tolerance.

    Example:
        rsvd verify --n 2 --u 0.1 --v 0.3 --mu 0.693 --seed 42
    """
    try:
        config = resolve_config(ctx, **flags)
    except Exception as e:
        fail(ctx, e)
        return

    names = list(suites) or list(SUITES)
    status(config, f"Verifying n={config.n} u={config.u:g} v={config.v:g} mu={config.mu:g} seed={config.seed}")

    def report(result: SuiteResult) -> None:
        verdict = "PASS" if result.passed else "FAIL"
        detail = result.error or f"max error {result.max_error:.3e} (tol {result.tolerance:.1e})"
        status(config, f"  {result.name:<15} {verdict}  {detail}")

    try:
        results = run_suites(config, names, progress_callback=report)
    except Exception as e:
        fail(ctx, e)
        return

    if config.output is not None:
        rows = [
            (r.name, r.max_error, r.tolerance, r.samples, r.seconds, r.passed, r.error)
            for r in results
        ]
        emit_table(REPORT_COLUMNS, rows, config, meta={"suites": names})
        status(config, f"Report written to: {config.output}")

    failed = [r.name for r in results if not r.passed]
    if failed:
        status(config, f"\nFailed suites: {', '.join(failed)}")
        sys.exit(1)
    status(config, f"\nAll {len(results)} suites passed.")
