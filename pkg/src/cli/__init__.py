"""Command-line interface."""

from .commands import build_config, cli, parse_config, read_config_file

__all__ = ["build_config", "cli", "parse_config", "read_config_file"]
