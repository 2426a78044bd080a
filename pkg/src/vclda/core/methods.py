"""The classification methods compared by the benchmark."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from vclda.core.errors import NonConvergenceError
from vclda.core.experiment import ExperimentSpec
from vclda.core.registry import MethodRegistry
from vclda.estimators.baseline import oracle_predict_batch, static_lda_fit, static_lda_predict
from vclda.estimators.classify import Regime, empirical_risk, fit_classifier
from vclda.estimators.select import cross_validate
from vclda.estimators.solver import IstaOptions
from vclda.simulation.scenarios import Dataset, ScenarioOracle


@dataclass
class TrialContext:
    spec: ExperimentSpec
    trial: int
    cv_seed: int
    train: Dataset
    test: Dataset
    truth: ScenarioOracle
    ista_options: Optional[IstaOptions] = None
    support_tol: float = 0.0
    require_convergence: bool = False


@dataclass
class MethodOutcome:
    risk: float
    hyperparameters: dict[str, Any] = field(default_factory=dict)


@MethodRegistry.register("vclda")
def run_vclda(ctx: TrialContext) -> MethodOutcome:
    spec = ctx.spec
    if spec.fixed is not None:
        ln, lam = spec.fixed.ln, spec.fixed.lam
    else:
        plan = spec.cv.model_copy(update={"seed": ctx.cv_seed})
        cv = cross_validate(
            ctx.train,
            plan,
            regime=spec.regime,
            degree=spec.degree,
            mode=spec.prior_mode,
            ista_options=ctx.ista_options,
        )
        ln, lam = cv.best_ln, cv.best_lambda

    model, report = fit_classifier(
        ctx.train.X,
        ctx.train.U,
        ctx.train.Y,
        num_basis=ln,
        lam=lam,
        degree=spec.degree,
        mode=spec.prior_mode,
        regime=spec.regime,
        ista_options=ctx.ista_options,
        support_tol=ctx.support_tol,
    )
    if ctx.require_convergence and not report.converged:
        raise NonConvergenceError(
            f"ISTA did not converge (KKT residual {report.kkt_residual:.3g})"
        )
    hyperparameters: dict[str, Any] = {"ln": ln, "lambda": lam}
    if Regime(spec.regime) is Regime.HIGH:
        hyperparameters["support"] = report.support
        hyperparameters["converged"] = report.converged
    return MethodOutcome(
        risk=empirical_risk(model, ctx.test.X, ctx.test.U, ctx.test.Y),
        hyperparameters=hyperparameters,
    )


@MethodRegistry.register("static-lda")
def run_static_lda(ctx: TrialContext) -> MethodOutcome:
    model = static_lda_fit(ctx.train.X, ctx.train.U, ctx.train.Y)
    predictions = static_lda_predict(model, ctx.test.X)
    return MethodOutcome(risk=float(np.mean(predictions != ctx.test.Y)))


@MethodRegistry.register("oracle")
def run_oracle(ctx: TrialContext) -> MethodOutcome:
    predictions = oracle_predict_batch(ctx.truth, ctx.test.X, ctx.test.U)
    return MethodOutcome(risk=float(np.mean(predictions != ctx.test.Y)))
