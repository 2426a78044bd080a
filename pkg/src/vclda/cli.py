import sys

import click
import colorama

from vclda.core.config import get_settings
from vclda.core.console import setup_logging
from vclda.core.errors import EXIT_USAGE, ConfigError
from vclda.operations.common import parse_float_list, parse_int_list

colorama.init()

REGIME_CHOICE = click.Choice(["low", "high"])
PRIOR_MODE_CHOICE = click.Choice(["equal", "estimated"])


@click.group()
@click.option("--log-level", help="Log level for stderr logging (e.g. INFO, DEBUG)")
@click.option(
    "--threads", type=click.IntRange(min=1), help="Worker threads for benchmark trials"
)
@click.pass_context
def cli(ctx, log_level, threads):
    """vclda - varying-coefficient linear discriminant analysis"""
    ctx.ensure_object(dict)

    # CLI values override env vars and config files (Pydantic merges the rest)
    try:
        settings = get_settings(log_level=log_level, threads=threads)
    except ConfigError as e:
        raise click.ClickException(str(e))

    setup_logging(settings.log_level)
    ctx.obj["settings"] = settings


@cli.group()
def config():
    """Manage configuration"""
    pass


@config.command()
@click.pass_context
def show(ctx):
    """Show current configuration"""
    from vclda.operations.config import show_config_command

    show_config_command(ctx)


@config.command("set")
@click.argument("key")
@click.argument("value")
@click.pass_context
def set_value(ctx, key, value):
    """Set a configuration value in ~/.vclda/config.yaml"""
    from vclda.operations.config import set_config_command

    set_config_command(ctx, key, value)


@cli.command()
@click.option("--n-per-class", type=int, help="Training samples per class [default: 100]")
@click.option("--p", "p", type=int, help="Number of features [default: 5]")
@click.option("--s", "s", type=int, help="Active features (defaults to p)")
@click.option("--direction", type=int, help="Direction function id 1-4 [default: 1]")
@click.option("--covariance", type=int, help="Covariance matrix id 1-3 [default: 1]")
@click.option("--test-size", type=int, help="Test set size [default: 200]")
@click.option("--seed", type=int, default=0, show_default=True, help="Scenario seed")
@click.option(
    "--trial", type=int, default=0, show_default=True, help="Trial index of the stream"
)
@click.option("--train-out", required=True, help="Path of the training CSV")
@click.option("--test-out", required=True, help="Path of the test CSV")
@click.pass_context
def simulate(
    ctx, n_per_class, p, s, direction, covariance, test_size, seed, trial, train_out, test_out
):
    """Generate a synthetic scenario as train/test CSV files"""
    from vclda.operations.simulate import simulate_command

    simulate_command(
        ctx, n_per_class, p, s, direction, covariance, test_size, seed, trial, train_out, test_out
    )


@cli.command()
@click.argument("dataset", type=click.Path(dir_okay=False))
@click.option("--out", "-o", required=True, help="Path of the model file to write")
@click.option("--ln", type=click.IntRange(min=1), help="Basis size; cross-validated if omitted")
@click.option("--lambda", "lam", type=click.FloatRange(min=0.0), help="Group lasso penalty")
@click.option("--regime", type=REGIME_CHOICE, help="low: closed form, high: group lasso")
@click.option("--prior-mode", type=PRIOR_MODE_CHOICE, help="Prior convention")
@click.option("--degree", type=click.IntRange(min=0), help="Spline degree")
@click.option("--folds", type=int, default=5, show_default=True, help="CV folds")
@click.option("--ln-grid", help="Comma-separated basis sizes to cross-validate")
@click.option("--seed", type=int, default=0, show_default=True, help="Fold shuffling seed")
@click.option(
    "--require-convergence", is_flag=True, help="Fail (exit 2) if ISTA does not converge"
)
@click.pass_context
def fit(
    ctx, dataset, out, ln, lam, regime, prior_mode, degree, folds, ln_grid, seed, require_convergence
):
    """Fit a classifier on a dataset CSV and write the model file"""
    from vclda.operations.fit import fit_command

    fit_command(
        ctx,
        dataset,
        out,
        ln,
        lam,
        regime,
        prior_mode,
        degree,
        folds,
        parse_int_list(ln_grid, "--ln-grid"),
        seed,
        require_convergence,
    )


@cli.command()
@click.argument("model", type=click.Path(dir_okay=False))
@click.argument("dataset", type=click.Path(dir_okay=False))
@click.option("--out", "-o", help="Predictions CSV path (stdout if omitted)")
@click.pass_context
def predict(ctx, model, dataset, out):
    """Predict labels for a dataset CSV with a saved model"""
    from vclda.operations.predict import predict_command

    predict_command(ctx, model, dataset, out)


@cli.command()
@click.argument("dataset", type=click.Path(dir_okay=False))
@click.option("--out", "-o", help="CV table CSV path (columns ln,lambda,fold,risk)")
@click.option("--regime", type=REGIME_CHOICE, help="low: L_n only, high: L_n and lambda")
@click.option("--prior-mode", type=PRIOR_MODE_CHOICE, help="Prior convention")
@click.option("--degree", type=click.IntRange(min=0), help="Spline degree")
@click.option("--folds", type=int, default=5, show_default=True, help="CV folds")
@click.option("--ln-grid", help="Comma-separated basis sizes")
@click.option("--lambda-grid", help="Comma-separated penalties (high regime)")
@click.option("--seed", type=int, default=0, show_default=True, help="Fold shuffling seed")
@click.pass_context
def cv(ctx, dataset, out, regime, prior_mode, degree, folds, ln_grid, lambda_grid, seed):
    """Cross-validate the basis size and penalty on a dataset CSV"""
    from vclda.operations.cv import cv_command

    cv_command(
        ctx,
        dataset,
        out,
        regime,
        prior_mode,
        degree,
        folds,
        parse_int_list(ln_grid, "--ln-grid"),
        parse_float_list(lambda_grid, "--lambda-grid"),
        seed,
    )


@cli.command()
@click.option("--config", "config_path", help="Experiment YAML file")
@click.option("--trials", type=click.IntRange(min=1), help="Number of Monte Carlo trials")
@click.option("--seed", type=int, help="Scenario seed")
@click.option("--threads", type=click.IntRange(min=1), help="Worker threads")
@click.option("--out", "-o", help="Results JSON path")
@click.option(
    "--ln",
    type=click.IntRange(min=1),
    help="Fixed basis size; high-regime lambda is still cross-validated without --lambda",
)
@click.option("--lambda", "lam", type=click.FloatRange(min=0.0), help="Fixed penalty")
@click.option("--regime", type=REGIME_CHOICE, help="low or high dimensional regime")
@click.option("--prior-mode", type=PRIOR_MODE_CHOICE, help="Prior convention")
@click.option("--n-per-class", type=int, help="Training samples per class")
@click.option("--p", "p", type=int, help="Number of features")
@click.option("--s", "s", type=int, help="Active features")
@click.option("--direction", type=int, help="Direction function id 1-4")
@click.option("--covariance", type=int, help="Covariance matrix id 1-3")
@click.option("--record-timing", is_flag=True, help="Store wall-clock runtime in the JSON")
@click.pass_context
def benchmark(
    ctx,
    config_path,
    trials,
    seed,
    threads,
    out,
    ln,
    lam,
    regime,
    prior_mode,
    n_per_class,
    p,
    s,
    direction,
    covariance,
    record_timing,
):
    """Run the Monte Carlo misclassification benchmark"""
    from vclda.operations.benchmark import benchmark_command

    benchmark_command(
        ctx,
        config_path,
        trials,
        seed,
        threads,
        out,
        ln,
        lam,
        regime,
        prior_mode,
        {
            "n_per_class": n_per_class,
            "p": p,
            "s": s,
            "direction_id": direction,
            "covariance_id": covariance,
        },
        record_timing,
    )


@cli.command()
@click.argument("results", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def table(ctx, results):
    """Re-render the risk table from a benchmark results JSON"""
    from vclda.operations.benchmark import table_command

    table_command(ctx, results)


def main():
    """Console entry point; usage errors exit with status 1."""
    try:
        cli.main(standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        sys.exit(EXIT_USAGE)
    except click.exceptions.Exit as e:
        sys.exit(e.exit_code)


if __name__ == "__main__":
    main()
