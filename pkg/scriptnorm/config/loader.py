"""Run configuration loader for YAML and JSON files.

The documented config grammar is YAML key-value sections; see
``configs/example.yaml``.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import ValidationError as PydanticValidationError

from scriptnorm.config.schema import RunConfig
from scriptnorm.exceptions import ConfigurationError


class ConfigLoader:
    """Loader for run configuration files.

    Supports YAML and JSON with format detection based on file extension.
    """

    @staticmethod
    def load_from_file(path: str | Path) -> RunConfig:
        """Load and validate a run config.

        Raises:
            ConfigurationError: If the file is missing, unparsable or invalid
        """
        file_path = Path(path)
        if not file_path.exists():
            raise ConfigurationError(f"Config file not found: {path}")

        try:
            content = file_path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigurationError(f"Failed to read config file {path}: {e}")

        try:
            if file_path.suffix.lower() in [".yaml", ".yml"]:
                data = yaml.safe_load(content)
            elif file_path.suffix.lower() == ".json":
                data = json.loads(content)
            else:
                raise ConfigurationError(
                    f"Unsupported config format: {file_path.suffix}. Use .yaml, .yml, or .json"
                )
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in {path}: {e}")
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Invalid JSON in {path}: {e}")

        return ConfigLoader.load_from_dict(data if data is not None else {}, source_path=str(path))

    @staticmethod
    def load_from_dict(data: Dict[str, Any], source_path: Optional[str] = None) -> RunConfig:
        """Validate a config dictionary.

        Raises:
            ConfigurationError: With one ``field -> path: message`` line per problem
        """
        if not isinstance(data, dict):
            raise ConfigurationError(
                f"Config data must be a mapping, got {type(data).__name__}"
            )

        try:
            return RunConfig(**data)
        except PydanticValidationError as e:
            error_messages = []
            for error in e.errors():
                field_path = " -> ".join(str(loc) for loc in error["loc"])
                error_messages.append(f"  - {field_path}: {error['msg']}")

            source_info = f" in {source_path}" if source_path else ""
            error_summary = "\n".join(error_messages)
            raise ConfigurationError(f"Config validation failed{source_info}:\n{error_summary}")


def config_hash(config: RunConfig) -> str:
    """SHA-256 over the canonical JSON dump of a config."""
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
