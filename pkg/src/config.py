"""
Runtime settings.

Values come from the process environment (after loading an optional `.env`
file) and are validated once; library code receives them as explicit arguments.
"""

import logging
import os
from typing import Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from src.errors import ConfigurationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "PROCMINE_"

DEFAULT_STATE_BOUND = 50_000
DEFAULT_SEARCH_BUDGET = 2_000_000
DEFAULT_SILENT_DEPTH = 4


class Settings(BaseModel):
    """
    Validated runtime settings.

    Attributes:
        threads: Upper bound on worker threads for per-variant conformance
        log_level: Root logging level used by the CLI
        state_bound: Default state bound for reachability graphs
        search_budget: Default expanded-state budget per alignment variant
        silent_depth: Default BFS depth for silent transitions during replay
    """

    threads: int = Field(default=1, ge=1, description="Parallel workers for conformance")
    log_level: str = Field(default="WARNING", description="Logging level name")
    state_bound: int = Field(default=DEFAULT_STATE_BOUND, ge=1)
    search_budget: int = Field(default=DEFAULT_SEARCH_BUDGET, ge=1)
    silent_depth: int = Field(default=DEFAULT_SILENT_DEPTH, ge=0)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"unknown logging level '{v}'")
        return level

    @classmethod
    def from_env(cls, environ: Optional[Dict[str, str]] = None) -> "Settings":
        """
        Build settings from environment variables.

        Args:
            environ: Mapping to read instead of os.environ (used by tests)

        Returns:
            Validated Settings

        Raises:
            ConfigurationError: If a variable holds an invalid value
        """
        if environ is None:
            load_dotenv()
            environ = dict(os.environ)

        values = {}
        for field_name in cls.model_fields:
            raw = environ.get(f"{ENV_PREFIX}{field_name.upper()}")
            if raw is not None and raw.strip():
                values[field_name] = raw.strip()

        try:
            settings = cls(**values)
        except ValidationError as e:
            errors = "; ".join(
                f"{ENV_PREFIX}{str(err['loc'][0]).upper()}: {err['msg']}" for err in e.errors()
            )
            raise ConfigurationError(f"Invalid configuration: {errors}") from e

        logger.debug(f"[CONFIG] Resolved settings: {settings.model_dump()}")
        return settings
