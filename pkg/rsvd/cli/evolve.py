"""
Evolve command: integrate the canonical flow of a reduced Hamiltonian.

Flows the Phi_1 Hamiltonian from a point (lambda, theta), or the dual F_1
Hamiltonian from a point (phat, qhat), and writes the trajectory.
"""

import sys

import click
import numpy as np

from rsvd.cli.common import emit_table, fail, initial_point, params_from, resolve_config, run_options, status
from rsvd.dynamics import METHODS, conservation_report, f1_dual_hamiltonian, integrate_canonical, phi1_hamiltonian
from rsvd.models import DualPoint, actions_F_red, actions_phi_dual
from rsvd.reduction import ReducedPoint


@click.command()
@run_options
@click.option("--method", type=click.Choice(list(METHODS)), help="Integrator")
@click.option("--l-max", type=int, help="Number of action columns to monitor")
@click.option("--stride", type=click.IntRange(min=1), default=1, show_default=True, help="Write every k-th step")
@click.pass_context
def evolve(ctx: click.Context, stride: int, **flags) -> None:
    """Integrate a reduced Hamiltonian and write its trajectory.

    Columns are t, the positions, the angles, H and one column per monitored
    action. Exits with status 1 if H drifts by more than the conservation
    tolerance.

    Example:
        rsvd evolve --n 1 --u 0 --v 0 --mu 0.6931 --lambda 0.6931 --theta 0 --t-end 1
    """
    try:
        config = resolve_config(ctx, **flags)
        params = params_from(config)
        point0 = initial_point(config, params)

        dual = isinstance(point0, DualPoint)
        H = f1_dual_hamiltonian(params) if dual else phi1_hamiltonian(params)
        status(config, f"Evolving {H.name} with {config.method}, dt={config.dt:g}, t_end={config.t_end:g}")

        trajectory = integrate_canonical(H, point0, config.t_end, config.dt, config.method)
    except Exception as e:
        fail(ctx, e)
        return

    n = config.n
    position, angle = ("phat", "qhat") if dual else ("lambda", "theta")
    levels = range(1, config.l_max + 1)
    if dual:
        actions = {f"Phi_{l}": (lambda state, l=l: actions_phi_dual(l, state.phat)) for l in levels}
    else:
        actions = {f"F_{l}": (lambda state, l=l: actions_F_red(l, state.lam)) for l in levels}

    columns = (
        ["t"]
        + [f"{position}_{j}" for j in range(1, n + 1)]
        + [f"{angle}_{j}" for j in range(1, n + 1)]
        + ["H", "domain_slack"]
        + list(actions)
    )
    energy = trajectory.monitor("H")
    slack = trajectory.monitor("domain_slack")

    rows = []
    for index in range(0, len(trajectory), stride):
        state = trajectory.states[index]
        positions, angles = _coordinates(state)
        rows.append(
            [trajectory.times[index], *positions, *angles, energy[index], slack[index]]
            + [fn(state) for fn in actions.values()]
        )

    drift = conservation_report(trajectory, {"H": H})[0]
    start_positions, start_angles = _coordinates(point0)
    meta = {
        "hamiltonian": H.name,
        "method": config.method,
        "initial": {position: start_positions.tolist(), angle: start_angles.tolist()},
        "H_drift": drift.max_drift,
    }
    emit_table(columns, rows, config, meta)

    tolerance = config.tolerances.conservation
    status(config, f"H = {drift.initial:.12g}, max drift {drift.max_drift:.3e} (tol {tolerance:.1e})")
    if config.output is not None:
        status(config, f"Trajectory written to: {config.output}")
    if not drift.max_drift <= tolerance:
        click.echo(f"Error: H drift {drift.max_drift:.3e} exceeds {tolerance:.1e}", err=True)
        sys.exit(1)


def _coordinates(point: ReducedPoint | DualPoint) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(point, DualPoint):
        return point.phat, point.qhat
    return point.lam, point.theta
