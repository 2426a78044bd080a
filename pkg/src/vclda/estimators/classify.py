"""The fitted varying-coefficient discriminant rule."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from vclda.core.errors import (
    DegenerateScaleError,
    DimensionMismatchError,
    InvalidDimensionError,
    ZeroDirectionError,
)
from vclda.estimators.baseline import PopulationTruth
from vclda.estimators.bspline import DEFAULT_DEGREE, SplineBasis, build_basis, eval_scaled
from vclda.estimators.design import assemble, pseudo_response
from vclda.estimators.meanfit import (
    MeanModel,
    PriorMode,
    check_labeled_data,
    eval_class_mean,
    eval_pooled_mean,
    fit_mean_model,
)
from vclda.estimators.solver import (
    GammaCoefficients,
    IstaOptions,
    ista_solve,
    kkt_residual,
    objective,
    solve_closed_form,
    support,
)

logger = logging.getLogger(__name__)

SCALE_DENOMINATOR_FLOOR = 1e-10
DIRECTION_VARIANCE_FLOOR = 1e-14


class Regime(str, Enum):
    LOW = "low"
    HIGH = "high"


@dataclass(frozen=True, eq=False)
class ClassifierModel:
    basis: SplineBasis
    mean_model: MeanModel
    gamma: GammaCoefficients
    mode: PriorMode = PriorMode.EQUAL

    def __post_init__(self):
        if self.gamma.p != self.mean_model.n_features:
            raise DimensionMismatchError(
                f"gamma has {self.gamma.p} groups, mean model has "
                f"{self.mean_model.n_features} features"
            )
        if self.gamma.ln != self.basis.num_basis:
            raise DimensionMismatchError(
                f"gamma groups have {self.gamma.ln} entries, basis has "
                f"{self.basis.num_basis} functions"
            )
        object.__setattr__(self, "mode", PriorMode(self.mode))

    @property
    def n_features(self) -> int:
        return self.gamma.p


@dataclass
class FitReport:
    regime: Regime
    num_basis: int
    lam: float
    objective: float
    iterations: int = 0
    converged: bool = True
    kkt_residual: float = 0.0
    support: list[int] = field(default_factory=list)


def eval_direction(model: ClassifierModel, u: ArrayLike) -> np.ndarray:
    """theta_hat(u): shape ``(p,)`` for scalar u, ``(N, p)`` for a vector."""
    return eval_scaled(model.basis, u) @ model.gamma.groups.T


def _check_features(model: ClassifierModel, X: np.ndarray) -> None:
    if X.shape[-1] != model.n_features:
        raise DimensionMismatchError(
            f"model expects {model.n_features} features, got {X.shape[-1]}"
        )


def scale_factor(model: ClassifierModel, u: ArrayLike) -> np.ndarray:
    """Plug-in c_hat(u) = 1 / [pi_1 pi_2 (1 - (mu_1 - mu_2)^T theta_hat)]."""
    pi1 = model.mean_model.prior_class1
    pi0 = model.mean_model.prior_class0
    gap = eval_class_mean(model.mean_model, u, 1) - eval_class_mean(model.mean_model, u, 0)
    denom = pi1 * pi0 * (1.0 - np.sum(gap * eval_direction(model, u), axis=-1))
    if np.any(denom <= SCALE_DENOMINATOR_FLOOR):
        raise DegenerateScaleError(
            "plug-in scale denominator is not positive; the fitted direction "
            "is degenerate"
        )
    return 1.0 / denom


def decision_scores(model: ClassifierModel, X: ArrayLike, U: ArrayLike) -> np.ndarray:
    """Discriminant scores; label 1 is assigned where the score is >= 0."""
    X = np.asarray(X, dtype=float)
    U = np.asarray(U, dtype=float)
    _check_features(model, X)
    centered = X - eval_pooled_mean(model.mean_model, U, model.mode)
    scores = np.sum(centered * eval_direction(model, U), axis=-1)
    if model.mode is PriorMode.ESTIMATED:
        pi1 = model.mean_model.prior_class1
        scores = scale_factor(model, U) * scores + math.log(pi1 / (1.0 - pi1))
    return scores


def predict(model: ClassifierModel, x: ArrayLike, u: float) -> int:
    return int(decision_scores(model, x, u) >= 0.0)


def predict_batch(model: ClassifierModel, X: ArrayLike, U: ArrayLike) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    U = np.atleast_1d(np.asarray(U, dtype=float))
    if U.shape != (X.shape[0],):
        raise DimensionMismatchError(f"X has {X.shape[0]} rows, U has shape {U.shape}")
    return (decision_scores(model, X, U) >= 0.0).astype(int)


def empirical_risk(
    model: ClassifierModel, X_test: ArrayLike, U_test: ArrayLike, Y_test: ArrayLike
) -> float:
    """Fraction of misclassified test points."""
    Y_test = np.asarray(Y_test)
    if Y_test.size == 0:
        raise InvalidDimensionError("test set is empty")
    return float(np.mean(predict_batch(model, X_test, U_test) != Y_test))


def bayes_risk(delta: float) -> float:
    """Optimal risk Phi(-Delta/2) of the oracle rule."""
    if delta < 0:
        raise InvalidDimensionError(f"delta must be >= 0, got {delta}")
    return float(0.5 * special.erfc(delta / (2.0 * math.sqrt(2.0))))


def rule_risk(
    direction: ArrayLike,
    center: ArrayLike,
    mu1: ArrayLike,
    mu2: ArrayLike,
    sigma: ArrayLike,
    threshold: float = 0.0,
) -> float:
    """Risk of ``label 1 iff (x - center)^T direction >= threshold`` under equal priors."""
    direction = np.asarray(direction, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    variance = float(direction @ sigma @ direction)
    if variance <= DIRECTION_VARIANCE_FLOOR:
        raise ZeroDirectionError("fitted direction has zero variance under Sigma(u)")
    s = math.sqrt(variance)
    a = np.asarray(center, dtype=float) - np.asarray(mu1, dtype=float)
    b = np.asarray(center, dtype=float) - np.asarray(mu2, dtype=float)
    miss_class1 = special.ndtr((a @ direction + threshold) / s)
    miss_class0 = special.ndtr(-(b @ direction + threshold) / s)
    return float(0.5 * miss_class1 + 0.5 * miss_class0)


def conditional_risk(model: ClassifierModel, truth: PopulationTruth, u: float) -> float:
    """R_n(u): risk of the fitted rule at exposure u under the true distribution."""
    direction = eval_direction(model, u)
    center = eval_pooled_mean(model.mean_model, u, model.mode)
    threshold = 0.0
    if model.mode is PriorMode.ESTIMATED:
        pi1 = model.mean_model.prior_class1
        threshold = -math.log(pi1 / (1.0 - pi1)) / float(scale_factor(model, u))
    return rule_risk(
        direction,
        center,
        truth.mean_class1(u),
        truth.mean_class0(u),
        truth.covariance(u),
        threshold,
    )


def fit_classifier(
    X: ArrayLike,
    U: ArrayLike,
    Y: ArrayLike,
    num_basis: int,
    lam: float = 0.0,
    degree: int = DEFAULT_DEGREE,
    mode: PriorMode = PriorMode.EQUAL,
    regime: Regime = Regime.LOW,
    ista_options: Optional[IstaOptions] = None,
    warm_start: Optional[GammaCoefficients] = None,
    support_tol: float = 0.0,
) -> tuple[ClassifierModel, FitReport]:
    """Mean fit, system assembly and coefficient solve in one call."""
    X, U, Y = check_labeled_data(X, U, Y)
    mode = PriorMode(mode)
    regime = Regime(regime)
    basis = build_basis(degree, num_basis)
    mean_model = fit_mean_model(X, U, Y, basis)
    Z = pseudo_response(Y, mode, mean_model.prior_class1)
    sys = assemble(X, U, Z, mean_model, basis, mode)

    if regime is Regime.LOW:
        if lam != 0.0:
            logger.warning("lambda=%g ignored in the low-dimensional regime", lam)
        gamma = solve_closed_form(sys)
        report = FitReport(
            regime=regime,
            num_basis=num_basis,
            lam=0.0,
            objective=objective(gamma, sys, 0.0),
            kkt_residual=kkt_residual(gamma, sys, 0.0),
        )
    else:
        result = ista_solve(sys, lam, ista_options, warm_start)
        gamma = result.gamma
        report = FitReport(
            regime=regime,
            num_basis=num_basis,
            lam=lam,
            objective=result.objective,
            iterations=result.iterations,
            converged=result.converged,
            kkt_residual=result.kkt_residual,
        )
    report.support = sorted(support(gamma, support_tol))
    model = ClassifierModel(basis=basis, mean_model=mean_model, gamma=gamma, mode=mode)
    return model, report
