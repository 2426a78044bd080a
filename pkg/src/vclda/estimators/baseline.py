"""Comparison rules: the population (oracle) rule and static LDA."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from vclda.core.errors import DimensionMismatchError, SingularCovarianceError
from vclda.estimators.meanfit import check_labeled_data

COVARIANCE_CONDITION_LIMIT = 1e12


class PopulationTruth(Protocol):
    """Known population parameters at exposure u (simulation only)."""

    def mean_class1(self, u: float) -> np.ndarray: ...

    def mean_class0(self, u: float) -> np.ndarray: ...

    def covariance(self, u: float) -> np.ndarray: ...


def _solve_spd(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    cond = np.linalg.cond(matrix)
    if not np.isfinite(cond) or cond > COVARIANCE_CONDITION_LIMIT:
        raise SingularCovarianceError(f"covariance is singular (condition {cond:.3g})")
    try:
        return linalg.cho_solve(linalg.cho_factor(matrix), rhs)
    except linalg.LinAlgError as e:
        raise SingularCovarianceError(f"covariance is not positive definite: {e}")


def oracle_direction(truth: PopulationTruth, u: float) -> np.ndarray:
    """Sigma(u)^-1 (mu_1(u) - mu_2(u))."""
    return _solve_spd(truth.covariance(u), truth.mean_class1(u) - truth.mean_class0(u))


def oracle_predict(truth: PopulationTruth, x: ArrayLike, u: float) -> int:
    mu1 = truth.mean_class1(u)
    mu0 = truth.mean_class0(u)
    x = np.asarray(x, dtype=float)
    if x.shape != mu1.shape:
        raise DimensionMismatchError(f"x has shape {x.shape}, truth has {mu1.shape}")
    score = (x - (mu1 + mu0) / 2.0) @ oracle_direction(truth, u)
    return int(score >= 0.0)


def oracle_predict_batch(truth: PopulationTruth, X: ArrayLike, U: ArrayLike) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    U = np.asarray(U, dtype=float)
    return np.array([oracle_predict(truth, x, u) for x, u in zip(X, U)], dtype=int)


@dataclass(frozen=True, eq=False)
class StaticLdaModel:
    mean_class1: np.ndarray
    mean_class0: np.ndarray
    direction: np.ndarray

    @property
    def center(self) -> np.ndarray:
        return (self.mean_class1 + self.mean_class0) / 2.0


def static_lda_fit(X: ArrayLike, U: ArrayLike, Y: ArrayLike) -> StaticLdaModel:
    """Classical LDA ignoring the exposure: sample means and pooled covariance."""
    X, _, Y = check_labeled_data(X, U, Y)
    n, p = X.shape
    if n <= p + 1:
        raise SingularCovarianceError(
            f"pooled covariance needs more than p + 1 = {p + 1} samples, got {n}"
        )
    mean1 = X[Y == 1].mean(axis=0)
    mean0 = X[Y == 0].mean(axis=0)
    resid = np.vstack([X[Y == 1] - mean1, X[Y == 0] - mean0])
    pooled = resid.T @ resid / (n - 2)
    direction = _solve_spd(pooled, mean1 - mean0)
    return StaticLdaModel(mean_class1=mean1, mean_class0=mean0, direction=direction)


def static_lda_predict(model: StaticLdaModel, X: ArrayLike) -> np.ndarray:
    """Labels for a single observation (returns int) or a matrix of them."""
    X = np.asarray(X, dtype=float)
    if X.shape[-1] != model.direction.shape[0]:
        raise DimensionMismatchError(
            f"expected {model.direction.shape[0]} features, got {X.shape[-1]}"
        )
    scores = (X - model.center) @ model.direction
    if np.ndim(scores) == 0:
        return int(scores >= 0.0)
    return (scores >= 0.0).astype(int)
