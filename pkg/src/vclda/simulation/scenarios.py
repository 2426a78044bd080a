"""Synthetic scenario definitions and their population oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field, model_validator

from vclda.core.errors import DimensionMismatchError, UnknownScenarioError

DIRECTIONS = {
    1: lambda u: 1.0,
    2: lambda u: u,
    3: lambda u: math.sin(4.0 * u),
    4: lambda u: math.exp(u),
}

COVARIANCES = (1, 2, 3)


class ScenarioConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n_per_class: int = Field(100, ge=1)
    p: int = Field(5, ge=1)
    s: int | None = Field(None, ge=1, description="Active features; defaults to p")
    direction_id: int = Field(1)
    covariance_id: int = Field(1)
    test_size: int = Field(200, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.direction_id not in DIRECTIONS:
            raise ValueError(f"direction_id must be one of {sorted(DIRECTIONS)}")
        if self.covariance_id not in COVARIANCES:
            raise ValueError(f"covariance_id must be one of {list(COVARIANCES)}")
        if self.s is not None and self.s > self.p:
            raise ValueError(f"s must satisfy 1 <= s <= p, got s={self.s}, p={self.p}")
        return self

    @property
    def sparsity(self) -> int:
        return self.p if self.s is None else self.s


@dataclass(frozen=True, eq=False)
class Dataset:
    X: np.ndarray
    U: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        U = np.asarray(self.U, dtype=float)
        Y = np.asarray(self.Y, dtype=int)
        if X.ndim != 2 or U.shape != (X.shape[0],) or Y.shape != (X.shape[0],):
            raise DimensionMismatchError(
                f"inconsistent dataset shapes: X {X.shape}, U {U.shape}, Y {Y.shape}"
            )
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "Y", Y)

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    def subset(self, index: np.ndarray) -> "Dataset":
        return Dataset(X=self.X[index], U=self.U[index], Y=self.Y[index])


def direction_value(direction_id: int, u: float, p: int, s: int | None = None) -> np.ndarray:
    """beta(u): the selected formula on the first s entries, zero after."""
    if direction_id not in DIRECTIONS:
        raise UnknownScenarioError(f"unknown direction id {direction_id}")
    s = p if s is None else s
    beta = np.zeros(p)
    beta[:s] = DIRECTIONS[direction_id](float(u))
    return beta


@lru_cache(maxsize=64)
def _lag_matrix(p: int) -> np.ndarray:
    idx = np.arange(p)
    lags = np.abs(idx[:, None] - idx[None, :])
    lags.setflags(write=False)
    return lags


def covariance_value(covariance_id: int, u: float, p: int) -> np.ndarray:
    """Sigma(u) for the selected covariance family, with 0**0 = 1."""
    lags = _lag_matrix(p)
    u = float(u)
    if covariance_id == 1:
        return np.power(0.5, lags)
    if covariance_id == 2:
        # numpy evaluates 0.0 ** 0 as 1.0, so Sigma(0) is the identity.
        return np.power(u, lags)
    if covariance_id == 3:
        return np.where(lags == 0, 1.0, u)
    raise UnknownScenarioError(f"unknown covariance id {covariance_id}")


class ScenarioOracle:
    """Population parameters of a scenario.

    Class 1 has mean 0 and class 0 has mean Sigma(u) beta(u), so the Bayes
    direction Sigma^-1 (mu_1 - mu_2) is -beta(u). The sign is kept so the
    rule ``(x - mu)^T beta* >= 0`` labels class 1 correctly.
    """

    prior_class1 = 0.5

    def __init__(self, config: ScenarioConfig):
        self.config = config

    @property
    def p(self) -> int:
        return self.config.p

    def beta(self, u: float) -> np.ndarray:
        return direction_value(
            self.config.direction_id, u, self.config.p, self.config.sparsity
        )

    def covariance(self, u: float) -> np.ndarray:
        return covariance_value(self.config.covariance_id, u, self.config.p)

    def mean_class1(self, u: float) -> np.ndarray:
        return np.zeros(self.config.p)

    def mean_class0(self, u: float) -> np.ndarray:
        return self.covariance(u) @ self.beta(u)

    def pooled_mean(self, u: float) -> np.ndarray:
        return (self.mean_class1(u) + self.mean_class0(u)) / 2.0

    def bayes_direction(self, u: float) -> np.ndarray:
        return -self.beta(u)

    def delta(self, u: float) -> float:
        beta = self.beta(u)
        return math.sqrt(max(float(beta @ self.covariance(u) @ beta), 0.0))

    def direction_function(self, u: float) -> np.ndarray:
        """theta*(u) = pi_1 pi_2 beta*(u) / (1 + pi_1 pi_2 Delta(u)^2)."""
        weight = self.prior_class1 * (1.0 - self.prior_class1)
        return weight * self.bayes_direction(u) / (1.0 + weight * self.delta(u) ** 2)

    def mean_delta_risk(self, U: ArrayLike) -> float:
        """Average oracle risk Phi(-Delta(u)/2) over a set of exposures."""
        from vclda.estimators.classify import bayes_risk

        return float(np.mean([bayes_risk(self.delta(u)) for u in np.asarray(U)]))
