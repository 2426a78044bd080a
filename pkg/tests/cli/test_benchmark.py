"""Tests for the `vclda benchmark` and `vclda table` CLI commands."""

from __future__ import annotations

import json
from pathlib import Path

from click.testing import CliRunner

from vclda.cli import cli

SMALL = ["--n-per-class", "30", "--p", "3", "--trials", "3", "--ln", "4", "--seed", "2"]


class TestBenchmarkCommand:
    def test_prints_table_and_writes_json(self, runner: CliRunner, tmp_path: Path):
        out = tmp_path / "results.json"

        result = runner.invoke(cli, ["benchmark", *SMALL, "--out", str(out)])

        assert result.exit_code == 0, result.output
        lines = result.stdout.splitlines()
        assert lines[0] == "Misclassification risk (sd) over 3 trials"
        assert lines[1] == "scenario: p=3, s=3, n=30, direction=1, covariance=1, seed=2"
        assert [line.split()[0] for line in lines[3:]] == ["vclda", "static-lda", "oracle"]
        doc = json.loads(out.read_text())
        assert doc["trials"] == 3
        assert "runtime_seconds" not in doc

    def test_reruns_are_byte_identical(self, runner: CliRunner, tmp_path: Path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"

        runner.invoke(cli, ["benchmark", *SMALL, "--threads", "1", "--out", str(first)])
        runner.invoke(cli, ["benchmark", *SMALL, "--threads", "2", "--out", str(second)])

        assert first.read_bytes() == second.read_bytes()

    def test_table_rerenders_saved_results(self, runner: CliRunner, tmp_path: Path):
        out = tmp_path / "results.json"
        bench = runner.invoke(cli, ["benchmark", *SMALL, "--out", str(out)])

        table = runner.invoke(cli, ["table", str(out)])

        assert table.exit_code == 0, table.output
        assert table.stdout == bench.stdout

    def test_experiment_file_with_overrides(self, runner: CliRunner, tmp_path: Path):
        config = tmp_path / "experiment.yaml"
        config.write_text(
            "trials: 5\n"
            "methods: [oracle]\n"
            "scenario:\n"
            "  n_per_class: 20\n"
            "  p: 4\n"
            "  covariance_id: 3\n"
        )

        result = runner.invoke(cli, ["benchmark", "--config", str(config), "--trials", "2"])

        assert result.exit_code == 0, result.output
        assert result.stdout.startswith("Misclassification risk (sd) over 2 trials\n")
        assert "covariance=3" in result.stdout
        assert result.stdout.splitlines()[3].startswith("oracle")

    def test_record_timing(self, runner: CliRunner, tmp_path: Path):
        out = tmp_path / "results.json"

        runner.invoke(cli, ["benchmark", *SMALL, "--record-timing", "--out", str(out)])

        assert json.loads(out.read_text())["runtime_seconds"] >= 0.0

    def test_high_regime_with_ln_cross_validates_lambda(self, runner: CliRunner, tmp_path: Path):
        out = tmp_path / "results.json"

        result = runner.invoke(cli, ["benchmark", *SMALL, "--regime", "high", "--out", str(out)])

        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text())
        assert doc["selection"]["cv"]["ln_grid"] == [4]
        for trial in doc["per_trial"]:
            assert trial["hyperparameters"]["vclda"]["ln"] == 4
            assert trial["hyperparameters"]["vclda"]["lambda"] > 0.0

    def test_high_regime_with_ln_and_lambda_is_fixed(self, runner: CliRunner, tmp_path: Path):
        out = tmp_path / "results.json"

        result = runner.invoke(
            cli, ["benchmark", *SMALL, "--regime", "high", "--lambda", "0.01", "--out", str(out)]
        )

        assert result.exit_code == 0, result.output
        assert json.loads(out.read_text())["selection"] == {"fixed": {"ln": 4, "lambda": 0.01}}

    def test_lambda_requires_ln(self, runner: CliRunner):
        result = runner.invoke(cli, ["benchmark", "--lambda", "0.1"])

        assert result.exit_code == 1
        assert "--lambda requires --ln" in result.output

    def test_missing_experiment_file(self, runner: CliRunner, tmp_path: Path):
        result = runner.invoke(cli, ["benchmark", "--config", str(tmp_path / "nope.yaml")])

        assert result.exit_code == 1
        assert "not found" in result.output


class TestTableCommand:
    def test_rejects_other_json(self, runner: CliRunner, tmp_path: Path):
        path = tmp_path / "other.json"
        path.write_text("{}")

        result = runner.invoke(cli, ["table", str(path)])

        assert result.exit_code == 1
        assert "not a benchmark results file" in result.output
