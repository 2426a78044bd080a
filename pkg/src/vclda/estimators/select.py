"""K-fold cross-validation over the basis size L_n and the penalty lambda."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from vclda.core.errors import InfeasibleGridError, InvalidDimensionError, NumericalError
from vclda.estimators.bspline import DEFAULT_DEGREE, build_basis
from vclda.estimators.classify import ClassifierModel, Regime, empirical_risk
from vclda.estimators.design import DesignSystem, assemble, pseudo_response
from vclda.estimators.meanfit import PriorMode, MeanModel, fit_mean_model
from vclda.estimators.solver import IstaOptions, ista_solve, lambda_max, solve_closed_form
from vclda.simulation.scenarios import Dataset

logger = logging.getLogger(__name__)


class CvPlan(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    k_folds: int = Field(5, ge=2)
    ln_grid: list[int] = Field(default_factory=lambda: [4, 5, 6, 8, 10, 12])
    lambda_grid: Optional[list[float]] = Field(
        None, description="Explicit penalties; defaults to a log-spaced path from lambda_max"
    )
    n_lambda: int = Field(20, ge=1)
    lambda_min_ratio: float = Field(1e-3, gt=0.0, le=1.0)
    seed: int = Field(0, ge=0, lt=2**64)

    @field_validator("ln_grid")
    @classmethod
    def _nonempty_ln(cls, v: list[int]) -> list[int]:
        if not v or any(ln < 1 for ln in v):
            raise ValueError("ln_grid must be a nonempty list of positive integers")
        return v

    @field_validator("lambda_grid")
    @classmethod
    def _nonnegative_lambda(cls, v: Optional[list[float]]) -> Optional[list[float]]:
        if v is not None and (not v or any(lam < 0 for lam in v)):
            raise ValueError("lambda_grid must be a nonempty list of nonnegative reals")
        return v


@dataclass(frozen=True)
class CvRecord:
    ln: int
    lam: float
    fold: int
    risk: float


@dataclass
class CvResult:
    best_ln: int
    best_lambda: float
    table: list[CvRecord] = field(default_factory=list)

    def mean_risks(self) -> dict[tuple[int, float], float]:
        """Average fold risk per grid point, in first-seen order."""
        grouped: dict[tuple[int, float], list[float]] = {}
        for record in self.table:
            grouped.setdefault((record.ln, record.lam), []).append(record.risk)
        return {key: float(np.mean(risks)) for key, risks in grouped.items()}


def _canonical_order(data: Dataset, index: np.ndarray) -> np.ndarray:
    """Sort sample indices by content so fold membership ignores input order."""
    keys = [data.X[index, j] for j in range(data.n_features - 1, -1, -1)]
    keys.append(data.U[index])
    return index[np.lexsort(keys)]


def stratified_folds(data: Dataset, k_folds: int, seed: int) -> np.ndarray:
    """Fold id per sample, balanced within each class."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed])))
    folds = np.empty(data.n_samples, dtype=int)
    for label in (1, 0):
        members = _canonical_order(data, np.flatnonzero(data.Y == label))
        if members.size < k_folds:
            raise InvalidDimensionError(
                f"class {label} has {members.size} samples, fewer than k_folds={k_folds}"
            )
        shuffled = members[rng.permutation(members.size)]
        folds[shuffled] = np.arange(members.size) % k_folds
    return folds


def _feasible(data: Dataset, folds: np.ndarray, k_folds: int, ln: int) -> bool:
    for fold in range(k_folds):
        train = folds != fold
        for label in (1, 0):
            if np.count_nonzero(train & (data.Y == label)) < ln:
                return False
    return True


def _build_system(
    data: Dataset, ln: int, degree: int, mode: PriorMode
) -> tuple[MeanModel, DesignSystem]:
    basis = build_basis(degree, ln)
    mean_model = fit_mean_model(data.X, data.U, data.Y, basis)
    Z = pseudo_response(data.Y, mode, mean_model.prior_class1)
    return mean_model, assemble(data.X, data.U, Z, mean_model, basis, mode)


def default_lambda_grid(lam_max: float, n_lambda: int, min_ratio: float) -> list[float]:
    """Log-spaced penalties from lam_max down to ``min_ratio * lam_max``."""
    if lam_max <= 0:
        return [0.0]
    return [float(x) for x in np.geomspace(lam_max, lam_max * min_ratio, n_lambda)]


def cross_validate(
    data: Dataset,
    plan: Optional[CvPlan] = None,
    regime: Regime = Regime.LOW,
    degree: int = DEFAULT_DEGREE,
    mode: PriorMode = PriorMode.EQUAL,
    ista_options: Optional[IstaOptions] = None,
) -> CvResult:
    """Pick (L_n, lambda) minimizing the mean held-out misclassification risk.

    In the low-dimensional regime lambda is fixed to 0 and only L_n is
    searched. Ties go to the smaller L_n, then the larger lambda.
    """
    plan = plan or CvPlan()
    regime = Regime(regime)
    mode = PriorMode(mode)
    folds = stratified_folds(data, plan.k_folds, plan.seed)

    table: list[CvRecord] = []
    for ln in sorted(set(plan.ln_grid)):
        if ln < degree + 1 or not _feasible(data, folds, plan.k_folds, ln):
            logger.warning("Skipping L_n=%d: a training fold has too few samples", ln)
            continue
        try:
            table.extend(
                _score_basis_size(data, folds, plan, ln, regime, degree, mode, ista_options)
            )
        except NumericalError as e:
            logger.warning("Skipping L_n=%d: %s", ln, e)

    if not table:
        raise InfeasibleGridError(
            "no (L_n, lambda) candidate could be fitted on every fold; "
            "lower the L_n grid or the fold count"
        )

    result = CvResult(best_ln=0, best_lambda=0.0, table=table)
    best = min(
        result.mean_risks().items(),
        key=lambda item: (item[1], item[0][0], -item[0][1]),
    )
    (result.best_ln, result.best_lambda), best_risk = best
    logger.info(
        "CV selected L_n=%d, lambda=%.6g (mean risk %.4f)",
        result.best_ln,
        result.best_lambda,
        best_risk,
    )
    return result


def _score_basis_size(
    data: Dataset,
    folds: np.ndarray,
    plan: CvPlan,
    ln: int,
    regime: Regime,
    degree: int,
    mode: PriorMode,
    ista_options: Optional[IstaOptions],
) -> list[CvRecord]:
    # Fit every fold before recording so a failing fold drops the whole L_n.
    fold_systems = []
    for fold in range(plan.k_folds):
        train = data.subset(np.flatnonzero(folds != fold))
        held_out = data.subset(np.flatnonzero(folds == fold))
        fold_systems.append((fold, held_out, *_build_system(train, ln, degree, mode)))

    if regime is Regime.LOW:
        lambdas = [0.0]
    elif plan.lambda_grid is not None:
        lambdas = sorted(set(plan.lambda_grid), reverse=True)
    else:
        # The path starts where every fold fit and the full-data fit are zero.
        _, full_system = _build_system(data, ln, degree, mode)
        top = max(lambda_max(sys) for *_, sys in fold_systems)
        lambdas = default_lambda_grid(
            max(top, lambda_max(full_system)), plan.n_lambda, plan.lambda_min_ratio
        )

    records: list[CvRecord] = []
    for fold, held_out, mean_model, sys in fold_systems:
        warm = None
        for lam in lambdas:
            if regime is Regime.LOW:
                gamma = solve_closed_form(sys)
            else:
                solved = ista_solve(sys, lam, ista_options, warm)
                gamma = warm = solved.gamma
            model = ClassifierModel(
                basis=mean_model.basis, mean_model=mean_model, gamma=gamma, mode=mode
            )
            risk = empirical_risk(model, held_out.X, held_out.U, held_out.Y)
            records.append(CvRecord(ln=ln, lam=lam, fold=fold, risk=risk))
    return records
