"""Experiment configuration for ``vclda benchmark``.

One YAML document: flat keys plus one mapping per table, for example::

    trials: 100
    methods: [vclda, static-lda, oracle]
    regime: low
    scenario:
      n_per_class: 100
      p: 5
      direction_id: 1
      covariance_id: 1
      seed: 7
    cv:
      k_folds: 5
      ln_grid: [4, 5, 6, 8, 10, 12]
"""

from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from vclda.core.config import load_yaml_mapping
from vclda.core.errors import ConfigError
from vclda.estimators.select import CvPlan
from vclda.simulation.scenarios import ScenarioConfig

MethodName = Literal["vclda", "static-lda", "oracle"]
ALL_METHODS: List[str] = ["vclda", "static-lda", "oracle"]


class FixedHyperparameters(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    ln: int = Field(..., ge=1)
    lam: float = Field(0.0, ge=0.0, alias="lambda")


class ExperimentSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig)
    trials: int = Field(100, ge=1)
    methods: List[MethodName] = Field(default_factory=lambda: list(ALL_METHODS))
    cv: CvPlan = Field(default_factory=CvPlan)
    fixed: Optional[FixedHyperparameters] = Field(
        None, description="Skip cross-validation and use this (ln, lambda)"
    )
    regime: Literal["low", "high"] = "low"
    prior_mode: Literal["equal", "estimated"] = "equal"
    degree: int = Field(3, ge=0)
    output_path: Optional[Path] = None

    @field_validator("methods")
    @classmethod
    def _unique_nonempty(cls, v: List[str]) -> List[str]:
        if not v:
            raise ValueError("methods must not be empty")
        return list(dict.fromkeys(v))


def load_experiment_spec(path: Path | str) -> ExperimentSpec:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Experiment config not found: '{path}'")
    try:
        return ExperimentSpec.model_validate(load_yaml_mapping(path))
    except ValidationError as e:
        raise ConfigError(f"Invalid experiment config {path}:\n{e}")
