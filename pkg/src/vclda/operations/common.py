"""Helpers shared by the command implementations."""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator, Optional

import click
from pydantic import ValidationError

from vclda.core.config import Settings
from vclda.core.errors import EXIT_USAGE, VcldaError


class CommandError(click.ClickException):
    """A ClickException that keeps the exit code of the underlying error."""

    def __init__(self, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


@contextmanager
def translate_errors() -> Iterator[None]:
    """Re-raise library errors as click exceptions with their exit codes."""
    try:
        yield
    except VcldaError as e:
        raise CommandError(str(e), exit_code=e.exit_code) from e
    except ValidationError as e:
        raise CommandError(f"Invalid options: {e}") from e
    except OSError as e:
        raise CommandError(f"{e.strerror or e}: {e.filename}" if e.filename else str(e))


def get_settings_from(ctx: click.Context) -> Settings:
    obj = ctx.obj or {}
    settings = obj.get("settings")
    return settings if settings is not None else Settings()


def parse_int_list(value: Optional[str], option: str) -> Optional[list[int]]:
    """Parse a comma-separated integer list such as ``4,6,8``."""
    if value is None:
        return None
    try:
        items = [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}", param_hint=option)
    if not items:
        raise click.BadParameter("list must not be empty", param_hint=option)
    return items


def parse_float_list(value: Optional[str], option: str) -> Optional[list[float]]:
    if value is None:
        return None
    try:
        items = [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}", param_hint=option)
    if not items:
        raise click.BadParameter("list must not be empty", param_hint=option)
    return items
