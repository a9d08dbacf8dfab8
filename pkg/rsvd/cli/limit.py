"""
Limit command: convergence of the scaled Hamiltonian to its rational limit.
"""

import sys

import click
import numpy as np

from rsvd.cli.common import emit_table, fail, float_list, initial_point, params_from, resolve_config, run_options, status
from rsvd.models import DualPoint, ham_rational, potential_rational

COLUMNS = ("r", "H_r", "H_0", "abs_error", "V_0")


def fitted_slope(ladder: np.ndarray, errors: np.ndarray, tail: int | None = None) -> float:
    """Least-squares slope of log|H_r - H_0| against log r.

    Only the ``tail`` smallest factors enter the fit (all of them when
    ``tail`` is None or exceeds the ladder). Returns nan if a fitted error
    vanishes or is not finite.
    """
    ladder = np.asarray(ladder, dtype=float)
    errors = np.asarray(errors, dtype=float)
    order = np.argsort(ladder)
    if tail is not None:
        order = order[:tail]
    ladder, errors = ladder[order], errors[order]
    if np.any(errors <= 0) or not np.all(np.isfinite(errors)):
        return float("nan")
    return float(np.polyfit(np.log(ladder), np.log(errors), 1)[0])


@click.command()
@run_options
@click.option("--ladder", callback=float_list, help="Scaling factors r, e.g. 0.1,0.01,0.001")
@click.pass_context
def limit(ctx: click.Context, ladder: list[float] | None, **flags) -> None:
    """Compare H_r with the rational Hamiltonian H_0 as r goes to 0.

    The first row is r = 0. The log-log slope is fitted on the
    limit.fit_tail smallest factors; exits with status 1 if it falls
    outside [limit.slope_min, limit.slope_max].

    Example:
        rsvd limit --n 1 --u 0.1 --v 0.6 --mu 0.6931 --lambda 0.8 --theta 3.1416
    """
    try:
        if ladder is not None:
            flags["limit"] = {**ctx.obj["config"].limit.model_dump(), "ladder": ladder}
        config = resolve_config(ctx, **flags)
        params = params_from(config)
        rp = initial_point(config, params)
        if isinstance(rp, DualPoint):
            raise click.UsageError("limit starts from lambda/theta, not phat/qhat")

        h_zero = ham_rational(rp, params, 0.0)
        v_zero = potential_rational(rp.lam, params)
        factors = np.array(config.limit.ladder, dtype=float)
        values = np.array([ham_rational(rp, params, r) for r in factors])
    except Exception as e:
        fail(ctx, e)
        return

    errors = np.abs(values - h_zero)
    rows = [(0.0, h_zero, h_zero, 0.0, v_zero)]
    rows += [(r, h_r, h_zero, err, v_zero) for r, h_r, err in zip(factors, values, errors)]

    slope = fitted_slope(factors, errors, config.limit.fit_tail)
    bounds = config.limit
    passed = bool(bounds.slope_min <= slope <= bounds.slope_max)
    emit_table(COLUMNS, rows, config, meta={"slope": slope, "passed": passed})

    status(config, f"H_0 = {h_zero:.12g}, fitted slope {slope:.4f} (accept [{bounds.slope_min:g}, {bounds.slope_max:g}])")
    if not passed:
        click.echo(f"Error: convergence slope {slope:.4f} outside the accepted range", err=True)
        sys.exit(1)
