"""Estimation library: spline basis, mean fits, solvers and the discriminant rule."""

from vclda.estimators.bspline import SplineBasis, build_basis, eval_scaled, eval_unscaled
from vclda.estimators.classify import (
    ClassifierModel,
    FitReport,
    Regime,
    bayes_risk,
    conditional_risk,
    empirical_risk,
    eval_direction,
    fit_classifier,
    predict,
    predict_batch,
)
from vclda.estimators.meanfit import MeanModel, PriorMode, fit_mean_model
from vclda.estimators.solver import GammaCoefficients, IstaOptions, ista_solve, solve_closed_form

__all__ = [
    "ClassifierModel",
    "FitReport",
    "GammaCoefficients",
    "IstaOptions",
    "MeanModel",
    "PriorMode",
    "Regime",
    "SplineBasis",
    "bayes_risk",
    "build_basis",
    "conditional_risk",
    "empirical_risk",
    "eval_direction",
    "eval_scaled",
    "eval_unscaled",
    "fit_classifier",
    "fit_mean_model",
    "ista_solve",
    "predict",
    "predict_batch",
    "solve_closed_form",
]
