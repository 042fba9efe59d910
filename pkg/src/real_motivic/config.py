"""Engine configuration loaded from the environment (optionally a .env file)."""

import logging
import os
from typing import Any, Literal

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict

logger = logging.getLogger(__name__)

ENV_PREFIX = "REAL_MOTIVIC_"


class EngineConfig(BaseModel):
    """Sign and lattice conventions used by the zeta routes."""

    model_config = ConfigDict(frozen=True)

    qsigma: Literal["positive-gens", "all-gens"] = "positive-gens"
    corfib_sign: Literal["derived", "printed"] = "derived"
    log_level: str = "WARNING"


def load_config(**overrides: Any) -> EngineConfig:
    """
    Build the configuration from environment variables and explicit overrides.

    Args:
        **overrides: Field values that win over the environment (None values are ignored)

    Returns:
        Validated EngineConfig
    """
    load_dotenv()
    values: dict[str, Any] = {}
    for field in EngineConfig.model_fields:
        env_value = os.environ.get(ENV_PREFIX + field.upper())
        if env_value:
            values[field] = env_value
    values.update({k: v for k, v in overrides.items() if v is not None})
    config = EngineConfig(**values)
    logger.debug(f"Loaded config: {config}")
    return config
