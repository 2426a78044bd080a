import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from vclda.core.errors import TrialFailedError
from vclda.core.experiment import ExperimentSpec
from vclda.core.methods import MethodOutcome, TrialContext
from vclda.core.registry import MethodRegistry
from vclda.estimators.solver import IstaOptions
from vclda.io.results import format_cell, summarize_risks
from vclda.simulation.generator import generate, trial_seed

logger = logging.getLogger(__name__)


@dataclass
class TrialOutcome:
    trial: int
    cv_seed: int
    outcomes: Dict[str, MethodOutcome]


class BenchmarkRunner:
    """Runs the Monte Carlo trials of an experiment and aggregates risks."""

    def __init__(
        self,
        spec: ExperimentSpec,
        threads: int = 1,
        ista_options: Optional[IstaOptions] = None,
        support_tol: float = 0.0,
        require_convergence: bool = False,
    ):
        self.spec = spec
        self.threads = threads
        self.ista_options = ista_options
        self.support_tol = support_tol
        self.require_convergence = require_convergence

    def run_trial(self, trial: int) -> TrialOutcome:
        """Generate the trial's data and score every requested method on it."""
        seed = self.spec.scenario.seed
        try:
            train, test, truth = generate(self.spec.scenario, trial)
            ctx = TrialContext(
                spec=self.spec,
                trial=trial,
                cv_seed=trial_seed(seed, trial),
                train=train,
                test=test,
                truth=truth,
                ista_options=self.ista_options,
                support_tol=self.support_tol,
                require_convergence=self.require_convergence,
            )
            outcomes = {
                name: MethodRegistry.get(name)(ctx) for name in self.spec.methods
            }
        except Exception as e:
            raise TrialFailedError(trial, seed, e) from e
        logger.info(
            "Trial %d: %s",
            trial,
            ", ".join(f"{name}={o.risk:.3f}" for name, o in outcomes.items()),
        )
        return TrialOutcome(trial=trial, cv_seed=ctx.cv_seed, outcomes=outcomes)

    def run(self, record_timing: bool = False) -> Dict[str, Any]:
        """Run all trials and return the results document.

        Trials are scheduled on a thread pool but aggregated by trial index,
        so the document does not depend on the thread count.
        """
        started = time.perf_counter()
        trials = range(self.spec.trials)
        if self.threads > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results: List[TrialOutcome] = list(pool.map(self.run_trial, trials))
        else:
            results = [self.run_trial(trial) for trial in trials]
        elapsed = time.perf_counter() - started
        logger.info("Benchmark finished in %.1f s", elapsed)

        doc = self._document(sorted(results, key=lambda r: r.trial))
        if record_timing:
            doc["runtime_seconds"] = elapsed
        return doc

    def _document(self, results: List[TrialOutcome]) -> Dict[str, Any]:
        summary = {}
        for name in self.spec.methods:
            stats = summarize_risks([r.outcomes[name].risk for r in results])
            stats["cell"] = format_cell(stats["mean"], stats["sd"])
            summary[name] = stats

        return {
            "scenario": self.spec.scenario.model_dump(mode="json"),
            "trials": self.spec.trials,
            "methods": list(self.spec.methods),
            "regime": self.spec.regime,
            "prior_mode": self.spec.prior_mode,
            "degree": self.spec.degree,
            "selection": (
                {"fixed": self.spec.fixed.model_dump(by_alias=True)}
                if self.spec.fixed is not None
                else {"cv": self.spec.cv.model_dump(mode="json")}
            ),
            "summary": summary,
            "per_trial": [
                {
                    "trial": r.trial,
                    "cv_seed": r.cv_seed,
                    "risks": {name: o.risk for name, o in r.outcomes.items()},
                    "hyperparameters": {
                        name: o.hyperparameters
                        for name, o in r.outcomes.items()
                        if o.hyperparameters
                    },
                }
                for r in results
            ],
        }
