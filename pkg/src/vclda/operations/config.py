"""``vclda config`` show/set commands."""

import click
import yaml
from colorama import Fore, Style

from vclda.core import config as config_module
from vclda.core.config import Settings, load_yaml_mapping
from vclda.operations.common import get_settings_from, translate_errors


def show_config_command(ctx):
    """Print the merged settings."""
    settings = get_settings_from(ctx)
    click.echo(f"{Fore.CYAN}vclda settings:{Style.RESET_ALL}", err=True)
    click.echo(yaml.safe_dump(settings.model_dump(mode="json"), default_flow_style=False), nl=False)
    click.echo(f"Loaded from: {config_module.CONFIG_FILE}", err=True)


def set_config_command(ctx, key: str, value: str):
    """Set a value in ~/.vclda/config.yaml, keeping other keys."""
    config_file = config_module.CONFIG_FILE
    with translate_errors():
        raw_config = load_yaml_mapping(config_file) if config_file.exists() else {}

    if key not in Settings.model_fields:
        click.echo(f"Warning: '{key}' is not a known configuration setting.", err=True)

    raw_config[key] = yaml.safe_load(value)
    config_file.parent.mkdir(parents=True, exist_ok=True)
    with open(config_file, "w", encoding="utf-8") as f:
        yaml.safe_dump(raw_config, f)

    click.echo(f"Updated {key} = {raw_config[key]}")
