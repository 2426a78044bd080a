"""Simulation-only checks of a fitted rule against the known population."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from vclda.estimators.classify import (
    ClassifierModel,
    bayes_risk,
    conditional_risk,
    eval_direction,
)
from vclda.estimators.meanfit import eval_pooled_mean
from vclda.simulation.scenarios import ScenarioOracle


@dataclass(frozen=True)
class RiskGap:
    """Excess conditional risk at one exposure and the two terms bounding it."""

    u: float
    fitted_risk: float
    optimal_risk: float
    direction_error: float
    mean_error: float

    @property
    def excess_risk(self) -> float:
        return self.fitted_risk - self.optimal_risk


def risk_gap_terms(model: ClassifierModel, truth: ScenarioOracle, u: float) -> RiskGap:
    """||theta_hat(u) - theta*(u)||^2 and |(mu_hat(u) - mu(u))^T beta*(u)|^2 at u."""
    direction_error = float(
        np.sum((eval_direction(model, u) - truth.direction_function(u)) ** 2)
    )
    mean_shift = eval_pooled_mean(model.mean_model, u, model.mode) - truth.pooled_mean(u)
    mean_error = float(mean_shift @ truth.bayes_direction(u)) ** 2
    return RiskGap(
        u=float(u),
        fitted_risk=conditional_risk(model, truth, u),
        optimal_risk=bayes_risk(truth.delta(u)),
        direction_error=direction_error,
        mean_error=mean_error,
    )


def integrated_direction_error(
    model: ClassifierModel,
    truth: ScenarioOracle,
    n_points: int = 2000,
    rng: np.random.Generator | None = None,
) -> float:
    """Monte Carlo estimate of the integral of ||theta_hat - theta*||^2 over u."""
    rng = rng or np.random.Generator(np.random.Philox(0))
    U = rng.random(n_points)
    fitted = eval_direction(model, U)
    target = np.array([truth.direction_function(u) for u in U])
    return float(np.mean(np.sum((fitted - target) ** 2, axis=1)))
