#!/usr/bin/env python3
"""
Suite defaults from resources/suites.yaml.

A user config file is merged over the bundled defaults suite by suite, and
command-line flags override both.
"""

from pathlib import Path
from typing import Any, Dict, Optional

import yaml

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
DEFAULT_CONFIG = PROJECT_ROOT / "resources" / "suites.yaml"
DEFAULT_TEMPLATE = PROJECT_ROOT / "resources" / "templates" / "report.mustache.md"


class ConfigError(Exception):
    """The suite configuration file is missing or malformed"""


def _read_suites(path: Path) -> Dict[str, Dict[str, Any]]:
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a mapping of suite names")
    for suite, values in data.items():
        if not isinstance(values, dict):
            raise ConfigError(f"suite '{suite}' in {path} must be a mapping")
    return data


def load_suite_config(path: Optional[Path] = None) -> Dict[str, Dict[str, Any]]:
    """Merge the YAML file over the bundled defaults, suite by suite"""
    merged = {suite: dict(values) for suite, values in _read_suites(DEFAULT_CONFIG).items()}
    if path is None or Path(path).resolve() == DEFAULT_CONFIG.resolve():
        return merged
    path = Path(path)
    for suite, values in _read_suites(path).items():
        if suite not in merged:
            raise ConfigError(f"unknown suite '{suite}' in {path}")
        merged[suite].update(values)
    return merged


def as_list(value: Any) -> list:
    return list(value) if isinstance(value, (list, tuple)) else [value]
