"""Solvers for the approximation coefficients gamma.

The smooth part of the objective is ``g(gamma) = 1/2 gamma^T D_n gamma - b_n^T gamma``;
the high-dimensional regime adds the group lasso penalty
``lambda * sum_j ||gamma_(j)||_2`` and is solved by ISTA with backtracking.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field
from scipy import linalg

from vclda.core.errors import DimensionMismatchError, InvalidDimensionError, SingularSystemError
from vclda.estimators.design import DesignSystem

logger = logging.getLogger(__name__)

SYSTEM_CONDITION_LIMIT = 1e12
MIN_STEP = 1e-30


@dataclass(frozen=True, eq=False)
class GammaCoefficients:
    values: np.ndarray
    p: int
    ln: int

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.p * self.ln,):
            raise DimensionMismatchError(
                f"gamma needs {self.p * self.ln} values, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, p: int, ln: int) -> "GammaCoefficients":
        return cls(values=np.zeros(p * ln), p=p, ln=ln)

    @property
    def groups(self) -> np.ndarray:
        """View of shape ``(p, ln)``; row j is gamma_(j)."""
        return self.values.reshape(self.p, self.ln)

    def group_norms(self) -> np.ndarray:
        return np.linalg.norm(self.groups, axis=1)

    def scaled(self, factor: float) -> "GammaCoefficients":
        return GammaCoefficients(values=factor * self.values, p=self.p, ln=self.ln)


class IstaOptions(BaseModel):
    """Stopping and step-size controls for :func:`ista_solve`."""

    model_config = ConfigDict(frozen=True)

    max_iters: int = Field(10000, ge=1)
    rel_tol: float = Field(1e-8, ge=0.0)
    kkt_tol: float = Field(1e-6, ge=0.0)
    shrink_rate: float = Field(0.5, gt=0.0, lt=1.0)
    initial_step: float = Field(1.0, gt=0.0)
    fixed_iterations: bool = Field(
        False, description="Run exactly max_iters iterations, ignoring tolerances"
    )


@dataclass
class IstaResult:
    gamma: GammaCoefficients
    iterations: int
    objective: float
    converged: bool
    kkt_residual: float
    step_size: float
    objective_history: list[float] = field(default_factory=list)


def _check_gamma(gamma: GammaCoefficients, sys: DesignSystem) -> None:
    if gamma.p != sys.p or gamma.ln != sys.ln:
        raise DimensionMismatchError(
            f"gamma is {gamma.p}x{gamma.ln}, system is {sys.p}x{sys.ln}"
        )


def solve_closed_form(sys: DesignSystem) -> GammaCoefficients:
    """Unpenalized minimizer: solve D_n gamma = b_n."""
    cond = np.linalg.cond(sys.dn)
    if not np.isfinite(cond) or cond >= SYSTEM_CONDITION_LIMIT:
        raise SingularSystemError(
            f"D_n is numerically singular (condition {cond:.3g}); reduce p or L_n"
        )
    try:
        factor = linalg.cho_factor(sys.dn)
    except linalg.LinAlgError as e:
        raise SingularSystemError(f"D_n is not positive definite: {e}")
    return GammaCoefficients(values=linalg.cho_solve(factor, sys.bn), p=sys.p, ln=sys.ln)


def _smooth_value(values: np.ndarray, sys: DesignSystem) -> float:
    return float(0.5 * values @ (sys.dn @ values) - sys.bn @ values)


def _penalty(values: np.ndarray, sys: DesignSystem, lam: float) -> float:
    if lam == 0.0:
        return 0.0
    return float(lam * np.linalg.norm(values.reshape(sys.p, sys.ln), axis=1).sum())


def objective(gamma: GammaCoefficients, sys: DesignSystem, lam: float) -> float:
    _check_gamma(gamma, sys)
    return _smooth_value(gamma.values, sys) + _penalty(gamma.values, sys, lam)


def smooth_gradient(gamma: GammaCoefficients, sys: DesignSystem) -> np.ndarray:
    _check_gamma(gamma, sys)
    return sys.dn @ gamma.values - sys.bn


def group_soft_threshold(v: ArrayLike, t: float) -> np.ndarray:
    """Proximal map of ``t * ||.||_2``: shrink v toward 0 by t in norm."""
    if t < 0:
        raise InvalidDimensionError(f"threshold must be >= 0, got {t}")
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm <= t or norm == 0.0:
        return np.zeros_like(v)
    return v * ((norm - t) / norm)


def _prox(values: np.ndarray, sys: DesignSystem, t: float) -> np.ndarray:
    groups = values.reshape(sys.p, sys.ln)
    norms = np.linalg.norm(groups, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        factors = np.where(norms > t, (norms - t) / norms, 0.0)
    return (groups * factors[:, None]).reshape(-1)


def _kkt_residual(values: np.ndarray, grad: np.ndarray, sys: DesignSystem, lam: float) -> float:
    groups = values.reshape(sys.p, sys.ln)
    grads = grad.reshape(sys.p, sys.ln)
    norms = np.linalg.norm(groups, axis=1)
    grad_norms = np.linalg.norm(grads, axis=1)
    active = norms > 0
    residual = np.maximum(grad_norms - lam, 0.0)
    if np.any(active):
        unit = groups[active] / norms[active, None]
        residual[active] = np.linalg.norm(grads[active] + lam * unit, axis=1)
    return float(residual.max()) if residual.size else 0.0


def kkt_residual(gamma: GammaCoefficients, sys: DesignSystem, lam: float) -> float:
    """Largest group violation of the group-lasso optimality conditions."""
    return _kkt_residual(gamma.values, smooth_gradient(gamma, sys), sys, lam)


def lambda_max(sys: DesignSystem) -> float:
    """Smallest penalty for which gamma = 0 is optimal."""
    return float(np.linalg.norm(sys.bn.reshape(sys.p, sys.ln), axis=1).max())


def ista_solve(
    sys: DesignSystem,
    lam: float,
    opts: Optional[IstaOptions] = None,
    warm_start: Optional[GammaCoefficients] = None,
) -> IstaResult:
    """Group-lasso ISTA with backtracking line search.

    The step size never grows: each iteration starts from the previous
    accepted step and shrinks it by ``shrink_rate`` until the quadratic
    upper bound of g holds at the proximal point.
    """
    if lam < 0:
        raise InvalidDimensionError(f"lambda must be >= 0, got {lam}")
    opts = opts or IstaOptions()
    if warm_start is not None:
        _check_gamma(warm_start, sys)
        values = warm_start.values.copy()
    else:
        values = np.zeros(sys.dim)

    step = opts.initial_step
    smooth = _smooth_value(values, sys)
    current = smooth + _penalty(values, sys, lam)
    history = [current]
    converged = False
    residual = np.inf
    iterations = 0

    for iterations in range(1, opts.max_iters + 1):
        grad = sys.dn @ values - sys.bn
        residual = _kkt_residual(values, grad, sys, lam)
        if not opts.fixed_iterations and residual <= opts.kkt_tol:
            converged = True
            iterations -= 1
            break

        slack = 1e-12 * max(1.0, abs(smooth))
        while True:
            candidate = _prox(values - step * grad, sys, step * lam)
            diff = candidate - values
            cand_smooth = _smooth_value(candidate, sys)
            bound = smooth + diff @ grad + (diff @ diff) / (2.0 * step)
            if cand_smooth <= bound + slack or step <= MIN_STEP:
                break
            step *= opts.shrink_rate

        cand_value = cand_smooth + _penalty(candidate, sys, lam)
        change = abs(current - cand_value)
        values, smooth, previous, current = candidate, cand_smooth, current, cand_value
        history.append(current)

        if current > previous + slack:
            logger.warning(
                "ISTA objective increased at iteration %d: %.17g -> %.17g",
                iterations,
                previous,
                current,
            )
        if not opts.fixed_iterations and change <= opts.rel_tol * max(abs(previous), 1e-300):
            # A stalled objective only counts as converged if the KKT check also holds.
            residual = _kkt_residual(values, sys.dn @ values - sys.bn, sys, lam)
            converged = residual <= opts.kkt_tol
            break
    else:
        residual = _kkt_residual(values, sys.dn @ values - sys.bn, sys, lam)
        converged = opts.fixed_iterations or residual <= opts.kkt_tol

    if not converged:
        logger.warning(
            "ISTA stopped after %d iterations without converging (KKT residual %.3g)",
            iterations,
            residual,
        )
    else:
        logger.debug(
            "ISTA converged in %d iterations (objective %.6g, KKT %.3g)",
            iterations,
            current,
            residual,
        )

    return IstaResult(
        gamma=GammaCoefficients(values=values, p=sys.p, ln=sys.ln),
        iterations=iterations,
        objective=current,
        converged=converged,
        kkt_residual=residual,
        step_size=step,
        objective_history=history,
    )


def support(gamma: GammaCoefficients, tol: float = 0.0) -> set[int]:
    """Zero-based indices of features whose group norm exceeds ``tol``."""
    if tol < 0:
        raise InvalidDimensionError(f"tol must be >= 0, got {tol}")
    return {int(j) for j in np.flatnonzero(gamma.group_norms() > tol)}
