"""Shared pytest fixtures for vclda tests."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from vclda.io.datasets import write_dataset
from vclda.simulation.generator import generate
from vclda.simulation.scenarios import ScenarioConfig


@pytest.fixture
def runner():
    """Return a Click CliRunner for testing CLI commands."""
    return CliRunner()


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch):
    """Keep tests away from the user's ~/.vclda and any vclda_*.yaml in the CWD."""
    config_file = tmp_path / "home" / ".vclda" / "config.yaml"
    monkeypatch.setattr("vclda.core.config.CONFIG_FILE", config_file)
    monkeypatch.delenv("VCLDA_ENV", raising=False)
    for name in list(os.environ):
        if name.upper().startswith("VCLDA__"):
            monkeypatch.delenv(name)
    workdir = tmp_path / "work"
    workdir.mkdir()
    monkeypatch.chdir(workdir)
    return config_file


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(12345))


@pytest.fixture
def small_scenario():
    return ScenarioConfig(n_per_class=60, p=3, test_size=200, seed=3)


@pytest.fixture
def scenario_csvs(tmp_path: Path, small_scenario):
    """Train/test CSVs of the small scenario."""
    train, test, _ = generate(small_scenario)
    train_path = tmp_path / "train.csv"
    test_path = tmp_path / "test.csv"
    write_dataset(train_path, train)
    write_dataset(test_path, test)
    return train_path, test_path
