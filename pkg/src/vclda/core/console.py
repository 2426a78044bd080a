"""Logging setup and colored status output.

Logs and progress go to standard error; standard output is reserved for
machine-readable results.
"""

from __future__ import annotations

import logging
from typing import Optional

import click
from colorama import Fore, Style
from rich.console import Console
from rich.logging import RichHandler

_stderr_console = Console(stderr=True)


def setup_logging(level: str = "WARNING", console: Optional[Console] = None) -> None:
    """Route the ``vclda`` logger hierarchy through a rich handler on stderr."""
    logger = logging.getLogger("vclda")
    logger.handlers.clear()
    handler = RichHandler(
        console=console or _stderr_console,
        show_path=False,
        rich_tracebacks=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False


def status(message: str, color: str = Fore.CYAN) -> None:
    """Echo a colored status line to stderr."""
    click.echo(f"{color}{message}{Style.RESET_ALL}", err=True)


def success(message: str) -> None:
    status(message, Fore.GREEN)


def warn(message: str) -> None:
    status(message, Fore.YELLOW)
