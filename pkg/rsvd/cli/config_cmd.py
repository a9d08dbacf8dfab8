"""
Configuration commands for managing rsvd run settings.

Provides commands to view, initialize, and validate configuration.
"""

import json
import sys
from pathlib import Path
from typing import Any, Iterator

import click
import yaml


def _flatten(data: dict[str, Any], prefix: str = "") -> Iterator[tuple[str, Any]]:
    """Yield (dotted.key, value) pairs of a nested mapping."""
    for key, value in data.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, dotted + ".")
        else:
            yield dotted, value


@click.group(name="config")
def config_cmd():
    """Manage rsvd configuration."""
    pass


@config_cmd.command(name="show")
@click.option(
    "--format",
    "-f",
    type=click.Choice(["yaml", "json", "table"]),
    default="yaml",
    help="Output format",
)
@click.pass_context
def show_config(ctx: click.Context, format: str) -> None:
    """Show current configuration.

    Displays the configuration after file, environment and defaults are
    combined. The table format lists one dotted key per line.

    Example:
        rsvd config show --format table
    """
    from rsvd.config.loader import dump_config

    data = dump_config(ctx.obj["config"])

    if format == "yaml":
        click.echo(yaml.safe_dump(data, default_flow_style=False, sort_keys=False))
    elif format == "json":
        click.echo(json.dumps(data, indent=2))
    else:
        rows = list(_flatten(data))
        width = max(len(key) for key, _ in rows)
        for key, value in rows:
            click.echo(f"{key.ljust(width)}  {'-' if value is None else value}")


@config_cmd.command(name="init")
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    default="rsvd-config.yaml",
    help="Output file for configuration",
)
@click.option(
    "--force",
    "-f",
    is_flag=True,
    help="Overwrite existing configuration",
)
def init_config(output: str, force: bool) -> None:
    """Initialize a new configuration file.

    Writes every setting with its default value.

    Example:
        rsvd config init --output rsvd-config.yaml
    """
    from rsvd.config.loader import save_config
    from rsvd.config.schema import RunConfig
    from rsvd.core.errors import ConfigError

    output_path = Path(output)

    if output_path.exists() and not force:
        click.echo(f"Configuration file already exists: {output}", err=True)
        click.echo("Use --force to overwrite")
        sys.exit(1)

    try:
        save_config(RunConfig(), output_path)
    except ConfigError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    click.echo(f"Configuration initialized: {output}")
    click.echo("\nNext steps:")
    click.echo("  1. Set n, u, v and mu for the system you want to study")
    click.echo("  2. Optionally fix an initial point with lambda/theta or phat/qhat")
    click.echo("  3. Run: rsvd verify")


@config_cmd.command(name="validate")
@click.option(
    "--config-file",
    "-c",
    type=click.Path(exists=True, dir_okay=False),
    default="rsvd-config.yaml",
    help="Configuration file to validate",
)
def validate_config(config_file: str) -> None:
    """Validate a configuration file.

    Builds the coupling data, checks any initial point against its domain
    and warns about settings likely to miss the default tolerances.

    Example:
        rsvd config validate --config-file rsvd-config.yaml
    """
    from rsvd.config.loader import load_config
    from rsvd.reduction import build_params, domain_check

    try:
        config = load_config(config_file)
        params = build_params(config.n, config.u, config.v, config.mu)

        point = config.lambda_ if config.lambda_ is not None else config.phat
        slack = None
        if point is not None:
            report = domain_check(config.side, point, params)
            if not report:
                raise ValueError(f"initial {config.side} violates {report.violation}")
            slack = report.slack
    except Exception as e:
        click.echo(f"Configuration validation failed: {e}", err=True)
        sys.exit(1)

    click.echo(f"Configuration file is valid: {config_file}")
    click.echo(f"  x = {params.x:.6g}, y = {params.y:.6g}, alpha = {params.alpha:.6g}")
    if slack is not None:
        click.echo(f"  initial {config.side} point, distance to boundary {slack:.6g}")

    notes = []
    if config.dt > 1e-3:
        notes.append(f"dt={config.dt:g} is coarse; conservation tolerances may be missed")
    if config.t_end > 10:
        notes.append(f"t_end={config.t_end:g} makes dynamical checks slow")
    if config.n > 4 and config.samples > 50:
        notes.append("many samples at large n; consider raising workers")

    for note in notes:
        click.echo(f"  warning: {note}")
