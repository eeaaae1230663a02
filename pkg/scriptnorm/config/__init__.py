"""Run configuration and environment settings."""

from scriptnorm.config.environment import Settings
from scriptnorm.config.loader import ConfigLoader, config_hash
from scriptnorm.config.schema import RunConfig

__all__ = ["Settings", "ConfigLoader", "config_hash", "RunConfig"]
