'''
Runtime configuration.
Values come from the process environment (optionally seeded from a .env file)
and are validated into a pydantic model once per process.
'''
import os
import logging
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from backend.src.errors import ConfigError

logger = logging.getLogger("qhex.config")

DEFAULT_CAP = 10_000_000


class Settings(BaseModel):
    # visited-state budget for brute-force enumeration (QHEX_CAP)
    enumeration_cap: int = Field(default=DEFAULT_CAP, ge=1)
    # determinants up to this size use cofactor expansion, Bareiss above
    cofactor_limit: int = Field(default=6, ge=0)
    mv_det_limit: int = Field(default=4, ge=1)
    seed: int = 20200914
    workers: int = Field(default=1, ge=1)
    log_level: str = "INFO"


_ENV_FIELDS = {
    "QHEX_CAP": "enumeration_cap",
    "QHEX_COFACTOR_LIMIT": "cofactor_limit",
    "QHEX_MV_DET_LIMIT": "mv_det_limit",
    "QHEX_SEED": "seed",
    "QHEX_WORKERS": "workers",
    "QHEX_LOG_LEVEL": "log_level",
}


def load_settings() -> Settings:
    '''
    Build Settings from the environment.
    Unset variables fall back to the model defaults.
    '''
    load_dotenv(override=False)
    raw = {}
    for env_name, field in _ENV_FIELDS.items():
        value = os.getenv(env_name)
        if value is not None and value.strip() != "":
            raw[field] = value.strip()
    try:
        settings = Settings(**raw)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
