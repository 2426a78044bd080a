import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Tuple

import yaml
from pydantic import Field
from pydantic.fields import FieldInfo
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from vclda.core.errors import ConfigError

CONFIG_DIR = Path.home() / ".vclda"
CONFIG_FILE = CONFIG_DIR / "config.yaml"


def load_yaml_mapping(path: Path) -> Dict[str, Any]:
    """Read a YAML file that must contain a single mapping."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"Error parsing {path}: {e}")
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping, got {type(data).__name__}")
    return data


class YamlConfigSettingsSource(PydanticBaseSettingsSource):
    """Settings source backed by an optional YAML file."""

    def config_path(self) -> Path:
        raise NotImplementedError

    def _config_data(self) -> Dict[str, Any]:
        path = self.config_path()
        if not path.exists():
            return {}
        try:
            return load_yaml_mapping(path)
        except ConfigError:
            return {}

    def get_field_value(
        self, field: FieldInfo, field_name: str
    ) -> Tuple[Any, str, bool]:
        return self._config_data().get(field_name), field_name, False

    def prepare_field_value(
        self, field_name: str, field: FieldInfo, value: Any, value_is_complex: bool
    ) -> Any:
        return value

    def __call__(self) -> Dict[str, Any]:
        data = self._config_data()
        d: Dict[str, Any] = {}
        for field_name in self.settings_cls.model_fields:
            if data.get(field_name) is not None:
                d[field_name] = data[field_name]
        return d


class EnvironmentConfigSettingsSource(YamlConfigSettingsSource):
    """
    Loads ./vclda_{env}.yaml where {env} comes from VCLDA_ENV (default 'dev').
    """

    def config_path(self) -> Path:
        env_name = os.getenv("VCLDA_ENV", "dev")
        return Path.cwd() / f"vclda_{env_name}.yaml"


class GenericConfigSettingsSource(YamlConfigSettingsSource):
    """Loads the user-wide ~/.vclda/config.yaml."""

    def config_path(self) -> Path:
        return CONFIG_FILE


class Settings(BaseSettings):
    """
    vclda tool settings.

    Priority order (highest to lowest):
    1. CLI parameters (init_settings)
    2. Environment variables (VCLDA__*)
    3. Environment-specific config file (./vclda_{env}.yaml)
    4. Generic config file (~/.vclda/config.yaml)
    """

    model_config = SettingsConfigDict(
        env_prefix="VCLDA__",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )

    degree: int = Field(3, ge=0, description="Polynomial degree of the spline basis")
    prior_mode: Literal["equal", "estimated"] = Field(
        "equal", description="Pooled-mean and pseudo-response convention"
    )
    regime: Literal["low", "high"] = Field(
        "low", description="Closed-form solve (low) or group-lasso ISTA (high)"
    )
    threads: int = Field(1, ge=1, description="Worker threads for benchmark trials")
    log_level: str = Field("WARNING", description="Log level for stderr logging")
    require_convergence: bool = Field(
        False, description="Treat ISTA non-convergence as a failure"
    )
    support_tol: float = Field(
        0.0, ge=0.0, description="Group norm above which a feature is in the support"
    )

    ista_max_iters: int = Field(10000, ge=1)
    ista_rel_tol: float = Field(1e-8, ge=0.0)
    ista_kkt_tol: float = Field(1e-6, ge=0.0)
    ista_shrink_rate: float = Field(0.5, gt=0.0, lt=1.0)
    ista_initial_step: float = Field(1.0, gt=0.0)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (
            init_settings,
            env_settings,
            EnvironmentConfigSettingsSource(settings_cls),
            GenericConfigSettingsSource(settings_cls),
        )

    def ista_options(self):
        """Build solver options from the ``ista_*`` settings."""
        from vclda.estimators.solver import IstaOptions

        return IstaOptions(
            max_iters=self.ista_max_iters,
            rel_tol=self.ista_rel_tol,
            kkt_tol=self.ista_kkt_tol,
            shrink_rate=self.ista_shrink_rate,
            initial_step=self.ista_initial_step,
        )

    def save(self):
        """Save current settings to the generic config file."""
        CONFIG_FILE.parent.mkdir(parents=True, exist_ok=True)
        data = self.model_dump(mode="json", exclude_none=True)
        with open(CONFIG_FILE, "w", encoding="utf-8") as f:
            yaml.safe_dump(data, f)


def get_settings(**kwargs) -> Settings:
    """
    Get a settings instance.

    Args:
        **kwargs: CLI overrides; ``None`` values are dropped so lower-priority
            sources still apply.
    """
    overrides = {key: value for key, value in kwargs.items() if value is not None}
    try:
        return Settings(**overrides)
    except ValueError as e:
        raise ConfigError(f"Invalid settings: {e}")
