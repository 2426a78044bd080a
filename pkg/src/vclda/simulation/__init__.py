from vclda.simulation.generator import generate, sample_dataset, trial_rng, trial_seed
from vclda.simulation.scenarios import Dataset, ScenarioConfig, ScenarioOracle

__all__ = [
    "Dataset",
    "ScenarioConfig",
    "ScenarioOracle",
    "generate",
    "sample_dataset",
    "trial_rng",
    "trial_seed",
]
