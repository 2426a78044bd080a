"""Tests for vclda.estimators.select."""

from __future__ import annotations

import numpy as np
import pytest
from pydantic import ValidationError

from vclda.core.errors import InfeasibleGridError, InvalidDimensionError
from vclda.estimators.classify import Regime, empirical_risk, fit_classifier
from vclda.estimators.select import (
    CvPlan,
    CvRecord,
    CvResult,
    cross_validate,
    default_lambda_grid,
    stratified_folds,
)
from vclda.simulation.generator import generate
from vclda.simulation.scenarios import ScenarioConfig


@pytest.fixture(scope="module")
def data():
    train, _, _ = generate(ScenarioConfig(n_per_class=50, p=3, direction_id=2, seed=5))
    return train


class TestCvPlan:
    def test_defaults(self):
        plan = CvPlan()

        assert plan.k_folds == 5
        assert plan.ln_grid == [4, 5, 6, 8, 10, 12]
        assert plan.lambda_grid is None
        assert plan.n_lambda == 20

    @pytest.mark.parametrize(
        "fields",
        [{"k_folds": 1}, {"ln_grid": []}, {"ln_grid": [0, 4]}, {"lambda_grid": [-1.0]}, {"folds": 3}],
    )
    def test_invalid_plans_rejected(self, fields):
        with pytest.raises(ValidationError):
            CvPlan(**fields)


class TestStratifiedFolds:
    def test_classes_are_balanced_across_folds(self, data):
        folds = stratified_folds(data, 5, seed=1)

        for label in (0, 1):
            counts = np.bincount(folds[data.Y == label], minlength=5)
            assert counts.max() - counts.min() <= 1

    def test_deterministic_for_a_seed(self, data):
        assert np.array_equal(stratified_folds(data, 5, 9), stratified_folds(data, 5, 9))
        assert not np.array_equal(stratified_folds(data, 5, 9), stratified_folds(data, 5, 10))

    def test_row_order_does_not_matter(self, data, rng):
        perm = rng.permutation(data.n_samples)

        shuffled = stratified_folds(data.subset(perm), 5, 3)

        assert np.array_equal(shuffled, stratified_folds(data, 5, 3)[perm])

    def test_too_few_samples_per_class(self, data):
        with pytest.raises(InvalidDimensionError, match="k_folds"):
            stratified_folds(data, 60, 0)


class TestCrossValidate:
    def test_low_regime_searches_basis_size_only(self, data):
        result = cross_validate(data, CvPlan(ln_grid=[4, 5, 6], seed=2))

        assert result.best_ln in (4, 5, 6)
        assert result.best_lambda == 0.0
        assert {record.lam for record in result.table} == {0.0}
        assert len(result.table) == 3 * 5

    def test_mean_risk_is_average_of_folds(self, data):
        result = cross_validate(data, CvPlan(ln_grid=[4, 6], seed=2))

        for (ln, lam), mean in result.mean_risks().items():
            folds = [r.risk for r in result.table if r.ln == ln and r.lam == lam]
            assert len(folds) == 5
            assert mean == pytest.approx(np.mean(folds))
            assert 0.0 <= mean <= 1.0

    def test_selection_follows_tie_break(self, data):
        result = cross_validate(
            data, CvPlan(ln_grid=[4, 5], lambda_grid=[0.0, 1e-3, 1e6], seed=4), regime="high"
        )

        means = result.mean_risks()
        best = min(means.values())
        winners = sorted((ln, -lam) for (ln, lam), risk in means.items() if risk == best)
        assert (result.best_ln, result.best_lambda) == (winners[0][0], -winners[0][1])

    def test_penalty_above_lambda_max_gives_coin_flip(self, data):
        result = cross_validate(
            data, CvPlan(ln_grid=[4], lambda_grid=[1e6], seed=0), regime=Regime.HIGH
        )

        assert result.mean_risks()[(4, 1e6)] == 0.5

    def test_default_lambda_path(self, data):
        result = cross_validate(
            data, CvPlan(ln_grid=[4], n_lambda=5, seed=0), regime=Regime.HIGH
        )

        lambdas = sorted({record.lam for record in result.table}, reverse=True)
        assert len(lambdas) == 5
        assert lambdas[-1] == pytest.approx(1e-3 * lambdas[0])

    def test_default_lambda_path_starts_with_empty_fits(self):
        train, _, _ = generate(ScenarioConfig(n_per_class=50, p=10, s=3, covariance_id=2, seed=11))

        result = cross_validate(train, CvPlan(ln_grid=[4], n_lambda=3, seed=0), regime=Regime.HIGH)

        top = max(record.lam for record in result.table)
        assert result.mean_risks()[(4, top)] == 0.5

    def test_infeasible_sizes_are_skipped(self, data):
        result = cross_validate(data, CvPlan(ln_grid=[2, 4, 45], seed=0))

        assert {record.ln for record in result.table} == {4}

    def test_all_infeasible_raises(self, data):
        with pytest.raises(InfeasibleGridError, match="lower the L_n grid"):
            cross_validate(data, CvPlan(ln_grid=[45, 60], seed=0))

    def test_selected_basis_size_competes_with_best_fixed_size(self):
        train, test, _ = generate(ScenarioConfig(n_per_class=100, p=5, direction_id=2, seed=8))
        grid = [4, 5, 6, 8]

        result = cross_validate(train, CvPlan(ln_grid=grid, seed=1))

        def held_out_risk(ln):
            model, _ = fit_classifier(train.X, train.U, train.Y, num_basis=ln)
            return empirical_risk(model, test.X, test.U, test.Y)

        risks = {ln: held_out_risk(ln) for ln in grid}
        assert risks[result.best_ln] <= min(risks.values()) + 0.03


def test_default_lambda_grid():
    grid = default_lambda_grid(2.0, 20, 1e-3)

    assert len(grid) == 20
    assert grid[0] == pytest.approx(2.0)
    assert grid[-1] == pytest.approx(2e-3)
    assert all(a > b for a, b in zip(grid, grid[1:]))
    assert default_lambda_grid(0.0, 20, 1e-3) == [0.0]


def test_cv_result_mean_risks_keeps_first_seen_order():
    result = CvResult(
        best_ln=4,
        best_lambda=0.0,
        table=[
            CvRecord(ln=5, lam=0.0, fold=0, risk=0.2),
            CvRecord(ln=4, lam=0.0, fold=0, risk=0.1),
            CvRecord(ln=5, lam=0.0, fold=1, risk=0.4),
        ],
    )

    assert list(result.mean_risks().items()) == [((5, 0.0), pytest.approx(0.3)), ((4, 0.0), 0.1)]
