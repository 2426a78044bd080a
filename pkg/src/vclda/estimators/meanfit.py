"""Per-class spline fits of the mean functions mu_1(u) and mu_2(u)."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from vclda.core.errors import DimensionMismatchError, InvalidDimensionError, SingularGramError
from vclda.estimators.bspline import SplineBasis, design_matrix, eval_scaled

logger = logging.getLogger(__name__)

GRAM_CONDITION_LIMIT = 1e12


class PriorMode(str, Enum):
    """How class priors enter the pooled mean and pseudo-response."""

    EQUAL = "equal"
    ESTIMATED = "estimated"


@dataclass(frozen=True, eq=False)
class MeanModel:
    basis: SplineBasis
    coeffs_class1: np.ndarray
    coeffs_class0: np.ndarray
    prior_class1: float

    def __post_init__(self):
        c1 = np.asarray(self.coeffs_class1, dtype=float)
        c0 = np.asarray(self.coeffs_class0, dtype=float)
        if c1.ndim != 2 or c1.shape != c0.shape:
            raise DimensionMismatchError(
                f"coefficient matrices must share an L_n x p shape, got {c1.shape} "
                f"and {c0.shape}"
            )
        if c1.shape[0] != self.basis.num_basis:
            raise DimensionMismatchError(
                f"coefficients have {c1.shape[0]} rows, basis has "
                f"{self.basis.num_basis} functions"
            )
        if not 0.0 < self.prior_class1 < 1.0:
            raise InvalidDimensionError(
                f"prior_class1 must lie in (0, 1), got {self.prior_class1}"
            )
        object.__setattr__(self, "coeffs_class1", c1)
        object.__setattr__(self, "coeffs_class0", c0)

    @property
    def n_features(self) -> int:
        return self.coeffs_class1.shape[1]

    @property
    def prior_class0(self) -> float:
        return 1.0 - self.prior_class1


def check_labeled_data(X: ArrayLike, U: ArrayLike, Y: ArrayLike):
    """Coerce ``(X, U, Y)`` to arrays and validate their shapes and labels."""
    X = np.asarray(X, dtype=float)
    U = np.asarray(U, dtype=float)
    Y = np.asarray(Y)
    if X.ndim != 2:
        raise DimensionMismatchError(f"X must be a matrix, got shape {X.shape}")
    if U.shape != (X.shape[0],) or Y.shape != (X.shape[0],):
        raise DimensionMismatchError(
            f"X has {X.shape[0]} rows but U has shape {U.shape} and Y {Y.shape}"
        )
    if not np.all((Y == 0) | (Y == 1)):
        raise InvalidDimensionError("labels must be 0 or 1")
    return X, np.clip(U, 0.0, 1.0), Y.astype(int)


def _fit_class(B: np.ndarray, X: np.ndarray, label: int) -> np.ndarray:
    n, ln = B.shape
    if n < ln:
        raise SingularGramError(
            f"class {label} has {n} samples, fewer than L_n = {ln}; lower L_n"
        )
    gram = B.T @ B
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > GRAM_CONDITION_LIMIT:
        raise SingularGramError(
            f"within-class Gram matrix of class {label} is singular "
            f"(condition {cond:.3g}); lower L_n"
        )
    # One factorization shared by all p right-hand sides.
    factor = linalg.cho_factor(gram)
    return linalg.cho_solve(factor, B.T @ X)


def fit_mean_model(
    X: ArrayLike, U: ArrayLike, Y: ArrayLike, basis: SplineBasis
) -> MeanModel:
    """Least-squares regression of each feature on B(U), separately per class."""
    X, U, Y = check_labeled_data(X, U, Y)
    coeffs = {}
    for label in (1, 0):
        mask = Y == label
        coeffs[label] = _fit_class(design_matrix(basis, U[mask]), X[mask], label)
    prior_class1 = float(np.mean(Y == 1))
    logger.debug(
        "Fitted mean model: L_n=%d, p=%d, prior_class1=%.4f",
        basis.num_basis,
        X.shape[1],
        prior_class1,
    )
    return MeanModel(
        basis=basis,
        coeffs_class1=coeffs[1],
        coeffs_class0=coeffs[0],
        prior_class1=prior_class1,
    )


def eval_class_mean(model: MeanModel, u: ArrayLike, label: int) -> np.ndarray:
    """mu_hat_l(u); shape ``(p,)`` for scalar u, ``(N, p)`` for a vector."""
    if label not in (0, 1):
        raise InvalidDimensionError(f"class label must be 0 or 1, got {label}")
    coeffs = model.coeffs_class1 if label == 1 else model.coeffs_class0
    return eval_scaled(model.basis, u) @ coeffs


def eval_pooled_mean(
    model: MeanModel, u: ArrayLike, mode: PriorMode = PriorMode.EQUAL
) -> np.ndarray:
    mode = PriorMode(mode)
    mu1 = eval_class_mean(model, u, 1)
    mu0 = eval_class_mean(model, u, 0)
    if mode is PriorMode.EQUAL:
        return (mu1 + mu0) / 2.0
    return model.prior_class1 * mu1 + model.prior_class0 * mu0
