"""
JSON run-configuration reader.

This module provides the JsonConfigAdapter class that loads a RunConfig
from a JSON file. Every structural problem (missing file, invalid JSON,
missing keys, wrong types, unknown keys) is reported as a ConfigError so
the CLI can map it to a single exit code.

Example:
    config = JsonConfigAdapter().load("experiments/canonical.json")
    config.model.alpha
"""

import json
import logging
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.exceptions.mill_exceptions import ConfigError, ConfigNotFoundError
from src.models.config_models import RunConfig

logger = logging.getLogger(__name__)


class JsonConfigAdapter:
    """Adapter that parses JSON documents into RunConfig."""

    def parse(self, payload: Any, source: str | None = None) -> RunConfig:
        """
        Validate an already-decoded JSON value.

        Args:
            payload: Decoded JSON (must be an object).
            source: Path used in error messages.

        Returns:
            RunConfig.

        Raises:
            ConfigError: If the payload does not match the RunConfig schema.
        """
        if not isinstance(payload, dict):
            raise ConfigError("top-level JSON value must be an object", config_path=source)
        try:
            return RunConfig.model_validate(payload)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(part) for part in err['loc'])}: {err['msg']}" for err in e.errors()
            )
            raise ConfigError(problems, config_path=source) from e

    def load(self, config_path: str) -> RunConfig:
        """
        Read and validate a JSON config file.

        Args:
            config_path: Path to a UTF-8 JSON document.

        Returns:
            RunConfig.

        Raises:
            ConfigNotFoundError: If the file does not exist.
            ConfigError: If the file cannot be read, is not valid JSON, or
                does not match the schema.
        """
        path = Path(config_path)
        if not path.is_file():
            raise ConfigNotFoundError(config_path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read file: {e}", config_path=config_path) from e
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON: {e}", config_path=config_path) from e

        config = self.parse(payload, source=config_path)
        logger.info("loaded config %s", config_path)
        return config
