"""Scenario data generation to CSV."""

from typing import Optional

import click
from pydantic import ValidationError

from vclda.core.console import status, success
from vclda.core.errors import ConfigError
from vclda.io.datasets import write_dataset
from vclda.operations.common import translate_errors
from vclda.simulation.generator import generate
from vclda.simulation.scenarios import ScenarioConfig


def build_scenario(**fields) -> ScenarioConfig:
    """Validate scenario fields, dropping unset (None) values."""
    try:
        return ScenarioConfig(**{k: v for k, v in fields.items() if v is not None})
    except ValidationError as e:
        raise ConfigError(f"Invalid scenario: {e}")


def simulate_command(
    ctx,
    n_per_class: int,
    p: int,
    s: Optional[int],
    direction: int,
    covariance: int,
    test_size: int,
    seed: int,
    trial: int,
    train_out: str,
    test_out: str,
):
    """Write the training and test sets of one scenario trial."""
    with translate_errors():
        config = build_scenario(
            n_per_class=n_per_class,
            p=p,
            s=s,
            direction_id=direction,
            covariance_id=covariance,
            test_size=test_size,
            seed=seed,
        )
        status(
            f"Generating direction {config.direction_id} / covariance "
            f"{config.covariance_id}, p={config.p}, s={config.sparsity}, "
            f"seed={config.seed}, trial={trial}"
        )
        train, test, _ = generate(config, trial)
        write_dataset(train_out, train)
        write_dataset(test_out, test)
    success(
        f"Wrote {train.n_samples} training rows to {train_out} and "
        f"{test.n_samples} test rows to {test_out}"
    )
    click.echo(f"{train_out}\n{test_out}")
