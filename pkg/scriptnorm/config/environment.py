"""Environment settings for scriptnorm.

Values come from ``SCRIPTNORM_*`` variables, optionally read from a ``.env``
file first. Run configs and CLI flags take precedence over these settings.
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from scriptnorm.exceptions import ConfigurationError
from scriptnorm.inventory.inventory import DEFAULT_DATA_DIR

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
LOG_FORMATS = ("detailed", "simple")


@dataclass
class Settings:
    """Process-wide defaults.

    Attributes:
        log_level: Logging level (SCRIPTNORM_LOG_LEVEL)
        log_format: 'detailed' or 'simple' (SCRIPTNORM_LOG_FORMAT)
        threads: Default worker count (SCRIPTNORM_THREADS)
        data_dir: Directory holding inventories/ and rules/ (SCRIPTNORM_DATA_DIR)
    """

    log_level: str = "INFO"
    log_format: str = "detailed"
    threads: int = 1
    data_dir: Path = DEFAULT_DATA_DIR

    @classmethod
    def load(cls, env_file: Optional[Path] = None) -> "Settings":
        """Read settings from the environment.

        Raises:
            ConfigurationError: Naming the offending variable
        """
        env_path = env_file or Path(".env")
        if env_path.exists():
            logger.debug(f"Loading environment from {env_path}")
            load_dotenv(env_path, override=False)

        log_level = os.getenv("SCRIPTNORM_LOG_LEVEL", "INFO").upper()
        if log_level not in LOG_LEVELS:
            raise ConfigurationError(
                f"Invalid SCRIPTNORM_LOG_LEVEL value: '{log_level}'. "
                f"Must be one of: {', '.join(LOG_LEVELS)}"
            )

        log_format = os.getenv("SCRIPTNORM_LOG_FORMAT", "detailed").lower()
        if log_format not in LOG_FORMATS:
            raise ConfigurationError(
                f"Invalid SCRIPTNORM_LOG_FORMAT value: '{log_format}'. "
                f"Must be one of: {', '.join(LOG_FORMATS)}"
            )

        threads_raw = os.getenv("SCRIPTNORM_THREADS", "1")
        try:
            threads = int(threads_raw)
        except ValueError:
            threads = 0
        if threads < 1:
            raise ConfigurationError(
                f"Invalid SCRIPTNORM_THREADS value: '{threads_raw}'. Must be a positive integer"
            )

        data_dir_raw = os.getenv("SCRIPTNORM_DATA_DIR")
        data_dir = Path(data_dir_raw) if data_dir_raw else DEFAULT_DATA_DIR
        if not data_dir.is_dir():
            raise ConfigurationError(f"SCRIPTNORM_DATA_DIR is not a directory: {data_dir}")

        return cls(log_level=log_level, log_format=log_format, threads=threads, data_dir=data_dir)
