"""Seeded sampling of scenario datasets.

Streams come from numpy's counter-based Philox bit generator keyed by
``(seed, trial)``, so a seed reproduces the same data on every platform and
each Monte Carlo trial owns an independent stream.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from scipy import linalg

from vclda.core.errors import NonPositiveDefiniteError
from vclda.simulation.scenarios import Dataset, ScenarioConfig, ScenarioOracle


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def trial_seed(seed: int, trial: int) -> int:
    """A 64-bit seed derived from ``(seed, trial)``, used for fold shuffling."""
    state = np.random.SeedSequence([seed, trial, 1]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _draw_exposures(rng: np.random.Generator, n: int) -> np.ndarray:
    u = rng.random(n)
    # Covariance 3 is singular at u = 1; redraw such points.
    while np.any(u >= 1.0):
        bad = u >= 1.0
        u[bad] = rng.random(int(bad.sum()))
    return u


def _cholesky(sigma: np.ndarray) -> np.ndarray:
    try:
        return linalg.cholesky(sigma, lower=True)
    except linalg.LinAlgError as e:
        raise NonPositiveDefiniteError(f"scenario covariance is not positive definite: {e}")


def sample_dataset(
    oracle: ScenarioOracle,
    labels: np.ndarray,
    rng: np.random.Generator,
) -> Dataset:
    """Draw u ~ Uniform[0, 1) and X ~ N(mu_class(u), Sigma(u)) per label."""
    n = labels.shape[0]
    p = oracle.p
    U = _draw_exposures(rng, n)
    Z = rng.standard_normal((n, p))
    X = np.empty((n, p))
    static_factor: Optional[np.ndarray] = None
    if oracle.config.covariance_id == 1:
        static_factor = _cholesky(oracle.covariance(0.0))
    for i in range(n):
        u = U[i]
        factor = static_factor if static_factor is not None else _cholesky(oracle.covariance(u))
        mean = oracle.mean_class1(u) if labels[i] == 1 else oracle.mean_class0(u)
        X[i] = mean + factor @ Z[i]
    return Dataset(X=X, U=U, Y=labels)


def balanced_labels(n: int) -> np.ndarray:
    """``ceil(n/2)`` ones followed by ``floor(n/2)`` zeros."""
    n_class1 = (n + 1) // 2
    return np.concatenate([np.ones(n_class1, dtype=int), np.zeros(n - n_class1, dtype=int)])


def generate(
    config: ScenarioConfig, trial: int = 0
) -> tuple[Dataset, Dataset, ScenarioOracle]:
    """Training set (n_per_class per class), test set and the scenario oracle."""
    rng = trial_rng(config.seed, trial)
    oracle = ScenarioOracle(config)
    train = sample_dataset(oracle, balanced_labels(2 * config.n_per_class), rng)
    test = sample_dataset(oracle, balanced_labels(config.test_size), rng)
    return train, test, oracle
