"""Monte Carlo benchmark of the classification methods on a scenario."""

from typing import Optional

import click

from vclda.core.console import status, success
from vclda.core.errors import ConfigError
from vclda.core.experiment import ExperimentSpec, load_experiment_spec
from vclda.core.runner import BenchmarkRunner
from vclda.io.results import load_results, render_table, write_results
from vclda.operations.common import get_settings_from, translate_errors


def build_experiment(
    config_path: Optional[str],
    overrides: dict,
    scenario_overrides: dict,
) -> ExperimentSpec:
    """Load the experiment config (or defaults) and apply CLI overrides."""
    spec = load_experiment_spec(config_path) if config_path else ExperimentSpec()
    scenario_updates = {k: v for k, v in scenario_overrides.items() if v is not None}
    updates = {k: v for k, v in overrides.items() if v is not None}
    try:
        if scenario_updates:
            updates["scenario"] = spec.scenario.model_validate(
                {**spec.scenario.model_dump(), **scenario_updates}
            )
        data = {**spec.model_dump(by_alias=True), **updates}
        return ExperimentSpec.model_validate(data)
    except ValueError as e:
        raise ConfigError(f"Invalid experiment: {e}")


def _select_basis_size(spec: ExperimentSpec, ln: int, lam: Optional[float]) -> ExperimentSpec:
    """Fix L_n from the CLI; in the high regime lambda is still cross-validated unless given."""
    if spec.regime == "high" and lam is None:
        update = {"fixed": None, "cv": {**spec.cv.model_dump(), "ln_grid": [ln]}}
    else:
        update = {"fixed": {"ln": ln, "lambda": lam or 0.0}}
    try:
        return ExperimentSpec.model_validate({**spec.model_dump(by_alias=True), **update})
    except ValueError as e:
        raise ConfigError(f"Invalid experiment: {e}")


def benchmark_command(
    ctx,
    config_path: Optional[str],
    trials: Optional[int],
    seed: Optional[int],
    threads: Optional[int],
    out: Optional[str],
    ln: Optional[int],
    lam: Optional[float],
    regime: Optional[str],
    prior_mode: Optional[str],
    scenario_overrides: dict,
    record_timing: bool,
):
    settings = get_settings_from(ctx)
    with translate_errors():
        if ln is None and lam is not None:
            raise ConfigError("--lambda requires --ln; otherwise lambda is cross-validated")
        spec = build_experiment(
            config_path,
            {
                "trials": trials,
                "regime": regime,
                "prior_mode": prior_mode,
                "output_path": out,
            },
            {**scenario_overrides, "seed": seed},
        )
        if ln is not None:
            spec = _select_basis_size(spec, ln, lam)
        threads = threads or settings.threads
        status(
            f"Running {spec.trials} trials of {', '.join(spec.methods)} "
            f"on {threads} thread(s)"
        )
        runner = BenchmarkRunner(
            spec,
            threads=threads,
            ista_options=settings.ista_options(),
            support_tol=settings.support_tol,
            require_convergence=settings.require_convergence,
        )
        doc = runner.run(record_timing=record_timing)
        if spec.output_path:
            write_results(spec.output_path, doc)
            success(f"Results written to {spec.output_path}")

    click.echo(render_table(doc), nl=False)


def table_command(ctx, results_path: str):
    """Re-render the risk table of a saved benchmark results file."""
    with translate_errors():
        doc = load_results(results_path)
    click.echo(render_table(doc), nl=False)
