"""
Runtime settings read from the environment (and a .env file when present)
"""

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv

# Get project root directory (parent of src directory)
PROJECT_ROOT = Path(__file__).parent.parent.parent

DEFAULT_ORACLE_LIMIT = 20
DEFAULT_PARTITION_LIMIT = 1_000_000
DEFAULT_LOG_LEVEL = "WARNING"

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    oracle_limit: int = DEFAULT_ORACLE_LIMIT
    partition_limit: int = DEFAULT_PARTITION_LIMIT
    log_level: str = DEFAULT_LOG_LEVEL


def _int_from_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Load settings once per process

    Returns:
        Settings built from ARCHDIA_* environment variables
    """
    load_dotenv(PROJECT_ROOT / ".env")
    return Settings(
        oracle_limit=_int_from_env("ARCHDIA_ORACLE_LIMIT", DEFAULT_ORACLE_LIMIT),
        partition_limit=_int_from_env("ARCHDIA_PARTITION_LIMIT", DEFAULT_PARTITION_LIMIT),
        log_level=os.environ.get("ARCHDIA_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
    )
