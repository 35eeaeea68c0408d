"""
Runtime configuration.

Settings are read from ``FGDIST_*`` environment variables and validated with
pydantic. ``get_settings()`` returns the cached process-wide instance.
"""

import logging
import os
from functools import lru_cache
from typing import Mapping, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import InputError

ENV_PREFIX = "FGDIST_"

DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_FULL_TABLE_LIMIT = 8192
DEFAULT_FULL_CHECK_DIMENSION = 16

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _default_threads() -> int:
    return os.cpu_count() or 1


class Settings(BaseModel):
    """Validated runtime settings."""

    threads: int = Field(default_factory=_default_threads, ge=1)
    log_level: str = Field(default_factory=lambda: DEFAULT_LOG_LEVEL)
    full_table_limit: int = Field(default_factory=lambda: DEFAULT_FULL_TABLE_LIMIT, ge=0)
    full_check_dimension: int = Field(default_factory=lambda: DEFAULT_FULL_CHECK_DIMENSION, ge=0)
    check_termination: bool = True

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        # logging.getLevelNamesMapping() is 3.11+; same mapping on 3.10
        names = getattr(logging, "getLevelNamesMapping", lambda: dict(logging._nameToLevel))()
        if level not in names:
            raise ValueError(f"unknown log level: {value}")
        return level

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """Build settings from ``FGDIST_<FIELD>`` variables."""
        environ = os.environ if environ is None else environ
        values = {}
        for name in cls.model_fields:
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw:
                values[name] = raw
        try:
            return cls(**values)
        except ValidationError as exc:
            raise InputError(f"invalid {ENV_PREFIX}* environment: {exc}") from exc


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings, read once from the environment."""
    return Settings.from_env()


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging for command-line use."""
    level = (level or get_settings().log_level).upper()
    logging.basicConfig(level=level, format=LOG_FORMAT)
