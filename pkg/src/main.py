"""Main entry point for cstar-flow."""

import logging
import sys

from src.config import logging_config
from src.cli import cli

logger = logging.getLogger(__name__)


def setup_logging() -> None:
    """Log to stderr (stdout carries reports), and to a file when configured."""
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if logging_config.log_file:
        logging_config.log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(logging_config.log_file, encoding="utf-8"))

    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=getattr(logging, logging_config.level.upper(), logging.WARNING),
        handlers=handlers,
    )


def main():
    """Entry point."""
    setup_logging()
    cli(prog_name="cstar-flow")


if __name__ == "__main__":
    main()
