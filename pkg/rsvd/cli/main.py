"""
Main CLI entry point for rsvd.

Provides the root command group and imports all subcommands.
"""

import logging
import sys

import click

from rsvd import __version__
from rsvd.core.errors import ConfigError


@click.group()
@click.version_option(version=__version__, prog_name="rsvd")
@click.option(
    "--config",
    "-c",
    type=click.Path(exists=True, dir_okay=False),
    help="Path to rsvd-config.yaml or rsvd-config.toml",
    envvar="RSVD_CONFIG",
)
@click.option(
    "--verbose",
    "-v",
    is_flag=True,
    help="Enable verbose output",
)
@click.pass_context
def cli(ctx: click.Context, config: str | None, verbose: bool) -> None:
    """rsvd - numerical checks for a pair of dual boundary many-body systems.

    Verify the reduction, evolve reduced Hamiltonians, test the action-angle
    duality and study the rational limit.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["config_path"] = config

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    # Load configuration; a broken file stops every command before any computation
    try:
        if config:
            from rsvd.config.loader import load_config
            ctx.obj["config"] = load_config(config)
        else:
            from rsvd.config.loader import load_default_config
            ctx.obj["config"] = load_default_config()
    except (ConfigError, FileNotFoundError) as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


# Import and register subcommands
from rsvd.cli.verify import verify
from rsvd.cli.evolve import evolve
from rsvd.cli.duality import duality
from rsvd.cli.limit import limit
from rsvd.cli.config_cmd import config_cmd

cli.add_command(verify)
cli.add_command(evolve)
cli.add_command(duality)
cli.add_command(limit)
cli.add_command(config_cmd)
