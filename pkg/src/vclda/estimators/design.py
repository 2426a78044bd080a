"""Quadratic system (D_n, b_n) of the varying-coefficient least squares.

Each sample contributes the Kronecker design vector
``B~_i = (X_i - mu_hat(U_i)) (x) B(U_i)``; group ``j`` of a stacked vector
occupies entries ``j*L_n .. (j+1)*L_n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from vclda.core.errors import DimensionMismatchError, InvalidDimensionError
from vclda.estimators.bspline import SplineBasis, design_matrix
from vclda.estimators.meanfit import MeanModel, PriorMode, eval_pooled_mean

DEFAULT_CHUNK_SIZE = 256


@dataclass(frozen=True, eq=False)
class DesignSystem:
    dn: np.ndarray
    bn: np.ndarray
    p: int
    ln: int
    n_samples: int

    def __post_init__(self):
        dim = self.p * self.ln
        if self.dn.shape != (dim, dim) or self.bn.shape != (dim,):
            raise DimensionMismatchError(
                f"expected dn {(dim, dim)} and bn {(dim,)}, got {self.dn.shape} "
                f"and {self.bn.shape}"
            )

    @property
    def dim(self) -> int:
        return self.p * self.ln

    def group_slice(self, j: int) -> slice:
        return slice(j * self.ln, (j + 1) * self.ln)


def pseudo_response(
    Y: ArrayLike, mode: PriorMode = PriorMode.EQUAL, prior_class1: float = 0.5
) -> np.ndarray:
    """Recode labels: +-1/2 (equal priors) or +pi_2 / -pi_1 (estimated priors)."""
    Y = np.asarray(Y)
    if not np.all((Y == 0) | (Y == 1)):
        raise InvalidDimensionError("labels must be 0 or 1")
    if PriorMode(mode) is PriorMode.EQUAL:
        positive, negative = 0.5, -0.5
    else:
        positive, negative = 1.0 - prior_class1, -prior_class1
    return np.where(Y == 1, positive, negative).astype(float)


def kronecker_rows(centered: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Stack ``centered_i (x) B_i`` for a block of samples."""
    n, p = centered.shape
    return (centered[:, :, None] * B[:, None, :]).reshape(n, p * B.shape[1])


def assemble(
    X: ArrayLike,
    U: ArrayLike,
    Z: ArrayLike,
    mean_model: MeanModel,
    basis: SplineBasis,
    mode: PriorMode = PriorMode.EQUAL,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> DesignSystem:
    """Accumulate D_n = (1/N) sum B~_i B~_i^T and b_n = (1/N) sum B~_i Z_i.

    Samples are processed in fixed-size chunks, so only ``chunk_size`` design
    rows exist at once and the summation order depends only on ``chunk_size``.
    """
    X = np.asarray(X, dtype=float)
    U = np.clip(np.asarray(U, dtype=float), 0.0, 1.0)
    Z = np.asarray(Z, dtype=float)
    if X.ndim != 2 or U.shape != (X.shape[0],) or Z.shape != (X.shape[0],):
        raise DimensionMismatchError(
            f"inconsistent shapes: X {X.shape}, U {U.shape}, Z {Z.shape}"
        )
    if basis != mean_model.basis:
        raise DimensionMismatchError("basis does not match the mean model's basis")
    if X.shape[1] != mean_model.n_features:
        raise DimensionMismatchError(
            f"X has {X.shape[1]} features, mean model has {mean_model.n_features}"
        )
    n, p = X.shape
    if n == 0:
        raise InvalidDimensionError("cannot assemble a system from zero samples")
    ln = basis.num_basis
    dim = p * ln

    dn = np.zeros((dim, dim))
    bn = np.zeros(dim)
    for start in range(0, n, chunk_size):
        stop = min(start + chunk_size, n)
        u_chunk = U[start:stop]
        centered = X[start:stop] - eval_pooled_mean(mean_model, u_chunk, mode)
        rows = kronecker_rows(centered, design_matrix(basis, u_chunk))
        dn += rows.T @ rows
        bn += rows.T @ Z[start:stop]
    dn /= n
    bn /= n
    dn = (dn + dn.T) / 2.0
    return DesignSystem(dn=dn, bn=bn, p=p, ln=ln, n_samples=n)
