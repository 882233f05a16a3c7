import json
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Optional

from pydantic_settings import BaseSettings

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    NORM_TOL: float = 1e-12
    TAIL_TOL: float = 1e-12
    U2_ZERO_TOL: float = 1e-14
    CONSISTENCY_TOL: float = 1e-9
    N_MIN: int = -64
    N_MAX: int = 64
    OPT_N_MIN: int = -8
    OPT_N_MAX: int = 8
    LOG_LEVEL: str = "WARNING"

    class Config:
        env_file = ".env"
        env_prefix = "CIRCLE_"
        extra = "ignore"


settings = Settings()


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Read a declarative key-value tree from a JSON or TOML file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".toml":
        data = tomllib.loads(text)
    else:
        data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: top level of a config file must be a table")
    logger.debug("loaded config %s with keys %s", path, sorted(data))
    return data


def _merge(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_experiment_config(path: str | Path):
    from .schemas import ExperimentConfig

    return ExperimentConfig.model_validate(read_config_file(path))


def resolve_experiment_config(path: Optional[str | Path] = None, overrides: Optional[dict[str, Any]] = None):
    """Defaults, then the config file, then command-line overrides (None values are skipped)."""
    from .schemas import ExperimentConfig

    data: dict[str, Any] = read_config_file(path) if path else {}
    data = _merge(data, overrides or {})
    return ExperimentConfig.model_validate(data)
