import copy
import os
from pathlib import Path
from string import Template
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

from src.utils.errors import ParseError
from src.utils.logger import logger

# .env values become visible to ${VAR} substitution below
load_dotenv()

DEFAULT_CONFIG: Dict[str, Any] = {
    "system": {
        "log_level": "INFO",
        "log_file": None,
    },
    "defaults": {
        "seed": 0,
        "tol": 1e-10,
        "output_format": "json",
    },
    "verify": {
        "workers": 4,
        "mc_samples": 1_000_000,
        "mc_cases": 20,
    },
    "specfun": {
        "hurwitz_min_cutoff": 15,
        "bernoulli_order": 10,
        "stirling_shift": 10,
    },
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigLoader:
    _instance = None
    _config: Dict[str, Any] = {}

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(ConfigLoader, cls).__new__(cls)
            cls._instance._load_config()
        return cls._instance

    def _load_config(self):
        """Loads configuration from config.yaml with env var substitution, over built-in defaults."""
        config_path = Path(os.getenv("ARCHLAB_CONFIG", "config.yaml"))
        self._config = copy.deepcopy(DEFAULT_CONFIG)
        if not config_path.exists():
            logger.debug(f"{config_path} not found, using built-in defaults")
            return

        try:
            content = config_path.read_text(encoding="utf-8")
            # ${VAR} placeholders come from the environment; unknown ones stay as written
            content = Template(content).safe_substitute(os.environ)
            loaded = yaml.safe_load(content) or {}
            if not isinstance(loaded, dict):
                raise ValueError(f"{config_path} must contain a mapping at top level")
            self._config = _deep_merge(DEFAULT_CONFIG, loaded)
            logger.debug(f"Configuration loaded from {config_path}")
        except Exception as e:
            logger.error(f"Failed to load config: {e}")
            raise ParseError(f"cannot load configuration from {config_path}: {e}") from e

    @property
    def config(self) -> Dict[str, Any]:
        return self._config

    @staticmethod
    def get_system_config() -> Dict[str, Any]:
        return ConfigLoader().config.get('system', {})

    @staticmethod
    def get_defaults() -> Dict[str, Any]:
        return ConfigLoader().config.get('defaults', {})

    @staticmethod
    def get_verify_config() -> Dict[str, Any]:
        return ConfigLoader().config.get('verify', {})

    @staticmethod
    def get_specfun_config() -> Dict[str, Any]:
        return ConfigLoader().config.get('specfun', {})
