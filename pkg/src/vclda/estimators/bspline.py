"""Clamped uniform B-spline basis on [0, 1].

The scaled basis ``B(u) = sqrt(L_n) * B*(u)`` is nonnegative and sums to
``sqrt(L_n)`` everywhere on the closed interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from vclda.core.errors import InvalidDimensionError

DEFAULT_DEGREE = 3


@dataclass(frozen=True, eq=False)
class SplineBasis:
    degree: int
    num_basis: int
    knots: np.ndarray

    def __post_init__(self):
        if self.degree < 0:
            raise InvalidDimensionError(f"degree must be >= 0, got {self.degree}")
        if self.num_basis < self.degree + 1:
            raise InvalidDimensionError(
                f"num_basis must be >= degree + 1 = {self.degree + 1}, "
                f"got {self.num_basis}"
            )
        knots = np.asarray(self.knots, dtype=float)
        if knots.shape != (self.num_basis + self.degree + 1,):
            raise InvalidDimensionError(
                f"expected {self.num_basis + self.degree + 1} knots, got {knots.size}"
            )
        if knots[0] != 0.0 or knots[-1] != 1.0 or np.any(np.diff(knots) < 0):
            raise InvalidDimensionError("knots must be nondecreasing from 0 to 1")
        knots.setflags(write=False)
        object.__setattr__(self, "knots", knots)

    @property
    def scale(self) -> float:
        return math.sqrt(self.num_basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SplineBasis):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.num_basis == other.num_basis
            and np.array_equal(self.knots, other.knots)
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.num_basis, self.knots.tobytes()))


def build_basis(degree: int = DEFAULT_DEGREE, num_basis: int = 6) -> SplineBasis:
    """Clamped knot vector with equally spaced interior knots."""
    if degree < 0 or num_basis < degree + 1:
        raise InvalidDimensionError(
            f"num_basis must be >= degree + 1 (degree={degree}, num_basis={num_basis})"
        )
    n_interior = num_basis - degree - 1
    interior = np.linspace(0.0, 1.0, n_interior + 2)[1:-1]
    knots = np.concatenate(
        [np.zeros(degree + 1), interior, np.ones(degree + 1)]
    )
    return SplineBasis(degree=degree, num_basis=num_basis, knots=knots)


def _find_spans(basis: SplineBasis, u: np.ndarray) -> np.ndarray:
    # Half-open spans [t_i, t_{i+1}); u = 1 falls in the last nonempty span.
    spans = np.searchsorted(basis.knots, u, side="right") - 1
    return np.clip(spans, basis.degree, basis.num_basis - 1)


def _nonzero_basis_values(
    basis: SplineBasis, spans: np.ndarray, u: np.ndarray
) -> np.ndarray:
    """Cox-de Boor triangle for the ``degree + 1`` functions alive on each span."""
    knots = basis.knots
    degree = basis.degree
    n = u.shape[0]
    values = np.zeros((n, degree + 1))
    values[:, 0] = 1.0
    left = np.zeros((n, degree + 1))
    right = np.zeros((n, degree + 1))
    for j in range(1, degree + 1):
        left[:, j] = u - knots[spans + 1 - j]
        right[:, j] = knots[spans + j] - u
        saved = np.zeros(n)
        for r in range(j):
            temp = values[:, r] / (right[:, r + 1] + left[:, j - r])
            values[:, r] = saved + right[:, r + 1] * temp
            saved = left[:, j - r] * temp
        values[:, j] = saved
    return values


def eval_unscaled(basis: SplineBasis, u: ArrayLike) -> np.ndarray:
    """Standard basis B*(u).

    Returns shape ``(num_basis,)`` for scalar ``u`` and ``(N, num_basis)`` for
    a vector. Inputs outside [0, 1] are clamped.
    """
    u_arr = np.asarray(u, dtype=float)
    scalar = u_arr.ndim == 0
    u_flat = np.clip(np.atleast_1d(u_arr), 0.0, 1.0)

    spans = _find_spans(basis, u_flat)
    local = _nonzero_basis_values(basis, spans, u_flat)

    out = np.zeros((u_flat.shape[0], basis.num_basis))
    rows = np.arange(u_flat.shape[0])[:, None]
    cols = spans[:, None] - basis.degree + np.arange(basis.degree + 1)[None, :]
    out[rows, cols] = local
    return out[0] if scalar else out


def eval_scaled(basis: SplineBasis, u: ArrayLike) -> np.ndarray:
    """Scaled basis B(u) = sqrt(L_n) * B*(u)."""
    return basis.scale * eval_unscaled(basis, u)


def design_matrix(basis: SplineBasis, u: ArrayLike) -> np.ndarray:
    """Rows ``B(U_i)`` for a vector of exposures, shape ``(N, num_basis)``."""
    return eval_scaled(basis, np.atleast_1d(np.asarray(u, dtype=float)))
