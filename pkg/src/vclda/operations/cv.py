"""Cross-validation grid search on a dataset CSV."""

import csv
from typing import Optional

import click

from vclda.core.console import status
from vclda.estimators.classify import Regime
from vclda.estimators.select import CvPlan, CvResult, cross_validate
from vclda.io.datasets import read_labeled_dataset
from vclda.operations.common import get_settings_from, translate_errors


def write_cv_table(path: str, result: CvResult) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["ln", "lambda", "fold", "risk"])
        for record in result.table:
            writer.writerow([record.ln, repr(record.lam), record.fold, repr(record.risk)])


def cv_command(
    ctx,
    dataset: str,
    out: Optional[str],
    regime: Optional[str],
    prior_mode: Optional[str],
    degree: Optional[int],
    folds: int,
    ln_grid: Optional[list[int]],
    lambda_grid: Optional[list[float]],
    seed: int,
):
    settings = get_settings_from(ctx)
    regime = Regime(regime or settings.regime)
    plan_fields = {"k_folds": folds, "seed": seed}
    if ln_grid is not None:
        plan_fields["ln_grid"] = ln_grid
    if lambda_grid is not None:
        plan_fields["lambda_grid"] = lambda_grid

    with translate_errors():
        data = read_labeled_dataset(dataset)
        status(f"Cross-validating on {data.n_samples} samples ({regime.value} regime)")
        result = cross_validate(
            data,
            CvPlan(**plan_fields),
            regime=regime,
            degree=settings.degree if degree is None else degree,
            mode=prior_mode or settings.prior_mode,
            ista_options=settings.ista_options(),
        )
        if out:
            write_cv_table(out, result)
            status(f"Wrote {len(result.table)} CV rows to {out}")

    risks = result.mean_risks()
    click.echo(f"best ln={result.best_ln} lambda={result.best_lambda:.6g}")
    click.echo(f"cv_risk={risks[(result.best_ln, result.best_lambda)]:.3f}")
