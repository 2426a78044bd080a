"""Tests for vclda.estimators.classify."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import stats

from vclda.core.errors import (
    DegenerateScaleError,
    DimensionMismatchError,
    InvalidDimensionError,
    ZeroDirectionError,
)
from vclda.estimators.classify import (
    ClassifierModel,
    Regime,
    bayes_risk,
    conditional_risk,
    decision_scores,
    empirical_risk,
    eval_direction,
    fit_classifier,
    predict,
    predict_batch,
    rule_risk,
)
from vclda.estimators.meanfit import PriorMode
from vclda.estimators.solver import GammaCoefficients
from vclda.simulation.generator import generate
from vclda.simulation.scenarios import ScenarioConfig


@pytest.fixture(scope="module")
def scenario():
    return generate(ScenarioConfig(n_per_class=100, p=5, seed=11))


@pytest.fixture(scope="module")
def fitted(scenario):
    train, _, _ = scenario
    return fit_classifier(train.X, train.U, train.Y, num_basis=5)


class TestBayesRisk:
    def test_static_scenario_value(self):
        delta = math.sqrt(11.125)

        assert bayes_risk(delta) == pytest.approx(0.0477, abs=5e-4)
        assert abs(bayes_risk(delta) - stats.norm.cdf(-delta / 2)) <= 1e-12

    def test_zero_separation_is_coin_flip(self):
        assert bayes_risk(0.0) == 0.5

    def test_negative_delta_rejected(self):
        with pytest.raises(InvalidDimensionError):
            bayes_risk(-1.0)


class TestRuleRisk:
    def test_bayes_rule_attains_bayes_risk(self, scenario):
        _, _, truth = scenario
        for u in (0.1, 0.5, 0.9):
            risk = rule_risk(
                truth.bayes_direction(u),
                truth.pooled_mean(u),
                truth.mean_class1(u),
                truth.mean_class0(u),
                truth.covariance(u),
            )

            assert risk == pytest.approx(bayes_risk(truth.delta(u)), abs=1e-12)

    def test_zero_direction_rejected(self):
        with pytest.raises(ZeroDirectionError):
            rule_risk(np.zeros(2), np.zeros(2), np.zeros(2), np.ones(2), np.eye(2))


class TestFitClassifier:
    def test_low_regime_test_risk(self, scenario, fitted):
        _, test, _ = scenario
        model, report = fitted

        assert report.regime is Regime.LOW
        assert report.lam == 0.0
        assert report.support == [0, 1, 2, 3, 4]
        assert empirical_risk(model, test.X, test.U, test.Y) < 0.2

    def test_conditional_risk_is_at_least_bayes(self, scenario, fitted):
        _, _, truth = scenario
        model, _ = fitted
        for u in np.linspace(0.0, 0.99, 12):
            assert conditional_risk(model, truth, u) >= bayes_risk(truth.delta(u)) - 1e-12

    def test_direction_points_like_bayes_direction(self, scenario, fitted):
        _, _, truth = scenario
        model, _ = fitted

        cosine = [
            eval_direction(model, u) @ truth.bayes_direction(u)
            / np.linalg.norm(eval_direction(model, u))
            / np.linalg.norm(truth.bayes_direction(u))
            for u in (0.2, 0.5, 0.8)
        ]

        assert min(cosine) > 0.3

    def test_lambda_ignored_in_low_regime(self, scenario):
        train, _, _ = scenario

        _, report = fit_classifier(train.X, train.U, train.Y, num_basis=4, lam=0.3)

        assert report.lam == 0.0

    def test_huge_penalty_gives_empty_support(self, scenario):
        train, test, _ = scenario

        model, report = fit_classifier(
            train.X, train.U, train.Y, num_basis=4, lam=1e6, regime="high"
        )

        assert report.support == []
        assert report.converged
        assert np.all(predict_batch(model, test.X, test.U) == 1)

    def test_high_regime_reports_iterations(self, scenario):
        train, _, _ = scenario

        _, report = fit_classifier(
            train.X, train.U, train.Y, num_basis=4, lam=1e-3, regime=Regime.HIGH
        )

        assert report.regime is Regime.HIGH
        assert report.iterations > 0
        assert report.lam == 1e-3


class TestPrediction:
    def test_positive_rescaling_keeps_labels(self, scenario, fitted):
        _, test, _ = scenario
        model, _ = fitted
        rescaled = ClassifierModel(
            basis=model.basis,
            mean_model=model.mean_model,
            gamma=model.gamma.scaled(3.7),
            mode=model.mode,
        )

        assert np.array_equal(
            predict_batch(model, test.X, test.U), predict_batch(rescaled, test.X, test.U)
        )

    def test_zero_score_goes_to_class_one(self, fitted):
        model, _ = fitted
        flat = ClassifierModel(
            basis=model.basis,
            mean_model=model.mean_model,
            gamma=GammaCoefficients.zeros(model.n_features, model.basis.num_basis),
        )

        assert predict(flat, np.zeros(5), 0.5) == 1

    def test_single_and_batch_agree(self, scenario, fitted):
        _, test, _ = scenario
        model, _ = fitted

        singles = [predict(model, x, u) for x, u in zip(test.X[:20], test.U[:20])]

        assert singles == list(predict_batch(model, test.X[:20], test.U[:20]))

    def test_feature_count_checked(self, fitted):
        model, _ = fitted

        with pytest.raises(DimensionMismatchError):
            predict_batch(model, np.zeros((3, 4)), np.zeros(3))

    def test_empty_test_set_rejected(self, fitted):
        model, _ = fitted

        with pytest.raises(InvalidDimensionError):
            empirical_risk(model, np.zeros((0, 5)), np.zeros(0), np.zeros(0))


class TestEstimatedPriors:
    def test_balanced_data_matches_equal_priors(self, scenario, fitted):
        train, test, _ = scenario
        model, _ = fitted

        estimated, _ = fit_classifier(
            train.X, train.U, train.Y, num_basis=5, mode=PriorMode.ESTIMATED
        )

        assert estimated.mode is PriorMode.ESTIMATED
        assert np.array_equal(estimated.gamma.values, model.gamma.values)
        assert np.array_equal(
            predict_batch(estimated, test.X, test.U), predict_batch(model, test.X, test.U)
        )

    def test_unbalanced_data_shifts_threshold(self, scenario):
        train, test, truth = scenario
        keep = np.concatenate([np.flatnonzero(train.Y == 1), np.flatnonzero(train.Y == 0)[:50]])
        sub = train.subset(keep)

        model, _ = fit_classifier(sub.X, sub.U, sub.Y, num_basis=4, mode="estimated")

        assert model.mean_model.prior_class1 == pytest.approx(2 / 3)
        scores = decision_scores(model, test.X, test.U)
        assert np.all(np.isfinite(scores))
        assert conditional_risk(model, truth, 0.5) >= bayes_risk(truth.delta(0.5)) - 1e-12

    def test_degenerate_scale_raises(self, scenario):
        train, test, _ = scenario
        estimated, _ = fit_classifier(
            train.X, train.U, train.Y, num_basis=5, mode=PriorMode.ESTIMATED
        )
        blown_up = ClassifierModel(
            basis=estimated.basis,
            mean_model=estimated.mean_model,
            gamma=estimated.gamma.scaled(100.0),
            mode=PriorMode.ESTIMATED,
        )

        with pytest.raises(DegenerateScaleError):
            predict_batch(blown_up, test.X, test.U)
