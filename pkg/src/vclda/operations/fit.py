"""Fit a classifier from a dataset CSV and save the model file."""

from typing import Optional

import click
from colorama import Fore, Style

from vclda.core.console import status, success
from vclda.core.errors import NonConvergenceError
from vclda.estimators.classify import Regime, fit_classifier
from vclda.estimators.select import CvPlan, cross_validate
from vclda.io.datasets import read_labeled_dataset
from vclda.io.model_file import save_model
from vclda.operations.common import get_settings_from, translate_errors


def select_hyperparameters(
    data,
    ln: Optional[int],
    lam: Optional[float],
    regime: Regime,
    degree: int,
    prior_mode: str,
    plan: CvPlan,
    ista_options,
):
    """Use the given (ln, lambda) or fill in whatever is missing by cross-validation.

    Returns ``(ln, lam, cv_result)``; ``cv_result`` is None when nothing was
    searched.
    """
    needs_lambda = regime is Regime.HIGH and lam is None
    if ln is not None and not needs_lambda:
        return ln, (lam if regime is Regime.HIGH else 0.0), None

    updates = {}
    if ln is not None:
        updates["ln_grid"] = [ln]
    if regime is Regime.HIGH and lam is not None:
        updates["lambda_grid"] = [lam]
    cv = cross_validate(
        data,
        plan.model_copy(update=updates),
        regime=regime,
        degree=degree,
        mode=prior_mode,
        ista_options=ista_options,
    )
    return cv.best_ln, cv.best_lambda, cv


def fit_command(
    ctx,
    dataset: str,
    out: str,
    ln: Optional[int],
    lam: Optional[float],
    regime: Optional[str],
    prior_mode: Optional[str],
    degree: Optional[int],
    folds: int,
    ln_grid: Optional[list[int]],
    seed: int,
    require_convergence: bool,
):
    settings = get_settings_from(ctx)
    regime = Regime(regime or settings.regime)
    prior_mode = prior_mode or settings.prior_mode
    degree = settings.degree if degree is None else degree
    require_convergence = require_convergence or settings.require_convergence
    ista_options = settings.ista_options()

    with translate_errors():
        data = read_labeled_dataset(dataset)
        status(
            f"Loaded {data.n_samples} samples with {data.n_features} features "
            f"from {dataset}"
        )
        plan_fields = {"k_folds": folds, "seed": seed}
        if ln_grid is not None:
            plan_fields["ln_grid"] = ln_grid
        ln, lam, cv = select_hyperparameters(
            data, ln, lam, regime, degree, prior_mode, CvPlan(**plan_fields), ista_options
        )
        if cv is not None:
            status(f"Cross-validation over {len(cv.mean_risks())} grid points")

        model, report = fit_classifier(
            data.X,
            data.U,
            data.Y,
            num_basis=ln,
            lam=lam,
            degree=degree,
            mode=prior_mode,
            regime=regime,
            ista_options=ista_options,
            support_tol=settings.support_tol,
        )
        if not report.converged:
            message = (
                f"ISTA did not converge in {report.iterations} iterations "
                f"(KKT residual {report.kkt_residual:.3g})"
            )
            if require_convergence:
                raise NonConvergenceError(message)
            click.echo(f"{Fore.YELLOW}Warning: {message}{Style.RESET_ALL}", err=True)
        save_model(out, model)

    click.echo(f"selected ln={report.num_basis} lambda={report.lam:.6g}")
    click.echo(f"regime={report.regime.value} prior_mode={model.mode.value}")
    click.echo(f"objective={report.objective:.6g} iterations={report.iterations}")
    if regime is Regime.HIGH:
        features = ",".join(f"x{j + 1}" for j in report.support) or "-"
        click.echo(f"support_size={len(report.support)} support={features}")
    success(f"Model written to {out}")
