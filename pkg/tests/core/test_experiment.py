"""Tests for vclda.core.experiment.load_experiment_spec()."""

from __future__ import annotations

from pathlib import Path

import pytest

from vclda.core.errors import ConfigError
from vclda.core.experiment import ALL_METHODS, ExperimentSpec, load_experiment_spec


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "experiment.yaml"
    path.write_text(text)
    return path


class TestLoadExperimentSpec:
    def test_full_document(self, tmp_path: Path):
        path = _write(
            tmp_path,
            "trials: 10\n"
            "methods: [vclda, oracle]\n"
            "regime: high\n"
            "scenario:\n"
            "  n_per_class: 50\n"
            "  p: 10\n"
            "  s: 4\n"
            "  direction_id: 4\n"
            "  covariance_id: 2\n"
            "  seed: 7\n"
            "cv:\n"
            "  k_folds: 3\n"
            "  ln_grid: [4, 6]\n",
        )

        spec = load_experiment_spec(path)

        assert spec.trials == 10
        assert spec.methods == ["vclda", "oracle"]
        assert spec.regime == "high"
        assert spec.scenario.p == 10
        assert spec.scenario.sparsity == 4
        assert spec.cv.k_folds == 3
        assert spec.cv.ln_grid == [4, 6]
        assert spec.fixed is None

    def test_defaults(self, tmp_path: Path):
        spec = load_experiment_spec(_write(tmp_path, ""))

        assert spec == ExperimentSpec()
        assert spec.methods == ALL_METHODS
        assert spec.trials == 100

    def test_fixed_uses_lambda_key(self, tmp_path: Path):
        spec = load_experiment_spec(_write(tmp_path, "fixed:\n  ln: 5\n  lambda: 0.1\n"))

        assert spec.fixed.ln == 5
        assert spec.fixed.lam == 0.1

    def test_duplicate_methods_collapse(self):
        spec = ExperimentSpec(methods=["oracle", "vclda", "oracle"])

        assert spec.methods == ["oracle", "vclda"]

    @pytest.mark.parametrize(
        "text",
        [
            "trials: 0\n",
            "methods: []\n",
            "methods: [qda]\n",
            "unexpected: 1\n",
            "scenario:\n  direction_id: 9\n",
            "cv:\n  k_folds: 1\n",
        ],
    )
    def test_invalid_documents(self, tmp_path: Path, text: str):
        with pytest.raises(ConfigError, match="Invalid experiment config"):
            load_experiment_spec(_write(tmp_path, text))

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(ConfigError, match="not found"):
            load_experiment_spec(tmp_path / "missing.yaml")
