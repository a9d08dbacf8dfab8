"""
Options and helpers shared by the experiment subcommands.
"""

import csv
import io
import json
import math
import sys
import traceback
from pathlib import Path
from typing import Any, Callable, Optional, Sequence, Union

import click
import numpy as np

from rsvd.config.loader import dump_config, merge_overrides
from rsvd.config.schema import RunConfig
from rsvd.models import DualPoint
from rsvd.reduction import CouplingParams, ReducedPoint, build_params, make_rng, sample_domain

Cell = Union[float, int, str, None]


def float_list(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Optional[list[float]]:
    if value is None:
        return None
    try:
        return [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")


def run_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    """Attach the flags every experiment command accepts; they override the config file."""
    options = [
        click.option("--n", "n", type=int, help="Number of particles"),
        click.option("--u", "u", type=float, help="Left boundary coupling"),
        click.option("--v", "v", type=float, help="Right boundary coupling"),
        click.option("--mu", "mu", type=float, help="Pair interaction coupling"),
        click.option("--seed", type=int, help="Seed of the counter-based generator"),
        click.option("--t-end", "t_end", type=float, help="Integration horizon"),
        click.option("--dt", type=float, help="Fixed step size"),
        click.option("--lambda", "lambda_", callback=float_list, help="Initial lambda, e.g. 1.2,0.3"),
        click.option("--theta", callback=float_list, help="Initial theta"),
        click.option("--phat", callback=float_list, help="Initial dual positions"),
        click.option("--qhat", callback=float_list, help="Initial dual angles"),
        click.option("--output", "-o", type=click.Path(dir_okay=False), help="Output file (stdout when omitted)"),
        click.option("--format", "format_", type=click.Choice(["csv", "json"]), help="Output format"),
        click.option("--workers", type=int, help="Worker threads for independent seeds"),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def resolve_config(ctx: click.Context, **flags: Any) -> RunConfig:
    """Merge command-line flags over the loaded configuration.

    Raises:
        ConfigError: If the merged configuration is invalid.
    """
    if "format_" in flags:
        flags["format"] = flags.pop("format_")
    base: RunConfig = ctx.obj["config"]
    return merge_overrides(base, **flags)


def params_from(config: RunConfig) -> CouplingParams:
    return build_params(config.n, config.u, config.v, config.mu)


def initial_point(config: RunConfig, params: CouplingParams) -> Union[ReducedPoint, DualPoint]:
    """The configured initial point, or a seeded sample from the lambda domain."""
    if config.phat is not None:
        qhat = config.qhat if config.qhat is not None else [0.0] * config.n
        return DualPoint(phat=np.array(config.phat), qhat=np.array(qhat))
    if config.lambda_ is not None:
        theta = config.theta if config.theta is not None else [0.0] * config.n
        return ReducedPoint(lam=np.array(config.lambda_), theta=np.array(theta))

    rng = make_rng(config.seed)
    sampling = config.sampling
    lam = sample_domain("lambda", params, rng, sampling.margin_fraction, sampling.spread, sampling.max_attempts)
    return ReducedPoint(lam=lam, theta=rng.uniform(0.0, 2 * np.pi, size=config.n))


def format_cell(value: Cell) -> str:
    """Render one CSV cell; floats use 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_cell(value: Cell) -> Any:
    if isinstance(value, (np.floating, float)):
        number = float(value)
        return number if math.isfinite(number) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def render_table(
    columns: Sequence[str],
    rows: Sequence[Sequence[Cell]],
    config: RunConfig,
    meta: Optional[dict[str, Any]] = None,
) -> str:
    """Serialize a table as CSV or as JSON with ``columns``, ``rows`` and ``meta``."""
    if config.format == "json":
        document = {
            "columns": list(columns),
            "rows": [[_json_cell(cell) for cell in row] for row in rows],
            "meta": {"config": dump_config(config), **(meta or {})},
        }
        return json.dumps(document, indent=2) + "\n"

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(cell) for cell in row])
    return buffer.getvalue()


def emit_table(
    columns: Sequence[str],
    rows: Sequence[Sequence[Cell]],
    config: RunConfig,
    meta: Optional[dict[str, Any]] = None,
) -> None:
    """Write the table to ``config.output`` (creating parent directories) or to stdout."""
    text = render_table(columns, rows, config, meta)
    if config.output is None:
        click.echo(text, nl=False)
        return
    output_path = Path(config.output)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(text)


def status(config: RunConfig, message: str) -> None:
    """Progress text; goes to stderr when the table itself is written to stdout."""
    click.echo(message, err=config.output is None)


def fail(ctx: click.Context, error: BaseException) -> None:
    """Report an error the way every command does and exit 1."""
    click.echo(f"Error: {error}", err=True)
    if ctx.obj.get("verbose"):
        traceback.print_exc()
    sys.exit(1)
