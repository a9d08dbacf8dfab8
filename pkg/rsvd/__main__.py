"""
Entry point for running rsvd as a module.

Usage:
    python -m rsvd [COMMAND]
"""

from rsvd.cli.main import cli

if __name__ == "__main__":
    cli()
