"""
Configuration loading utilities.

Loads rsvd-config.yaml (or .toml) and environment variables.
"""

import os
import sys
from pathlib import Path
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

import yaml
from pydantic import ValidationError

from rsvd.config.schema import RunConfig, ToleranceConfig
from rsvd.core.errors import ConfigError

CONFIG_NAMES = ("rsvd-config.yaml", "rsvd-config.yml", "rsvd-config.toml")


def find_config_file() -> Optional[Path]:
    """Find an rsvd config file in standard locations.

    Search order:
    1. Current directory
    2. Parent directories (up to 5 levels)
    3. ~/.config/rsvd/

    Returns:
        Path to config file if found, None otherwise.
    """
    current = Path.cwd()
    for _ in range(5):
        for name in CONFIG_NAMES:
            config_path = current / name
            if config_path.exists():
                return config_path
        current = current.parent

    for name in CONFIG_NAMES:
        user_config = Path.home() / ".config" / "rsvd" / name
        if user_config.exists():
            return user_config

    return None


def _read_raw(config_path: Path) -> dict[str, Any]:
    if config_path.suffix == ".toml":
        with open(config_path, "rb") as f:
            return tomllib.load(f)
    with open(config_path) as f:
        raw = yaml.safe_load(f) or {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{config_path}: top level must be a mapping")
    return raw


def validate_config(raw_config: dict[str, Any]) -> RunConfig:
    """Validate a raw mapping, naming the offending field on failure.

    Raises:
        ConfigError: If any field is invalid.
    """
    try:
        return RunConfig(**raw_config)
    except ValidationError as e:
        problems = []
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"]) or "config"
            problems.append(f"{location}: {error['msg']}")
        raise ConfigError("invalid configuration: " + "; ".join(problems)) from e


def load_config(config_path: str | Path) -> RunConfig:
    """Load configuration from a YAML or TOML file.

    Args:
        config_path: Path to rsvd-config.yaml or rsvd-config.toml

    Returns:
        Validated RunConfig instance

    Raises:
        FileNotFoundError: If config file doesn't exist
        ConfigError: If config is invalid
    """
    config_path = Path(config_path)

    if not config_path.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    raw_config = _read_raw(config_path)

    # Apply environment variable overrides
    raw_config = _apply_env_overrides(raw_config)

    return validate_config(raw_config)


def load_default_config() -> RunConfig:
    """Load configuration from default location or return defaults.

    Returns:
        RunConfig instance
    """
    config_path = find_config_file()

    if config_path:
        return load_config(config_path)

    return validate_config(_apply_env_overrides({}))


def _apply_env_overrides(config: dict[str, Any]) -> dict[str, Any]:
    """Apply environment variable overrides to configuration.

    Environment variables are mapped as:
    - RSVD_N -> n
    - RSVD_MU -> mu
    - RSVD_TOL_OVERRIDE -> tolerances (test-only fault injection)
    - etc.

    Args:
        config: Raw configuration dictionary

    Returns:
        Configuration with environment overrides applied
    """
    env_mappings = [
        ("RSVD_N", ["n"]),
        ("RSVD_U", ["u"]),
        ("RSVD_V", ["v"]),
        ("RSVD_MU", ["mu"]),
        ("RSVD_SEED", ["seed"]),
        ("RSVD_DT", ["dt"]),
        ("RSVD_T_END", ["t_end"]),
        ("RSVD_FORMAT", ["format"]),
    ]

    for env_var, path in env_mappings:
        value = os.environ.get(env_var)
        if value:
            _set_nested(config, path, value)

    override = os.environ.get("RSVD_TOL_OVERRIDE")
    if override:
        for key, value in parse_tolerance_override(override).items():
            _set_nested(config, ["tolerances", key], value)

    return config


def parse_tolerance_override(text: str) -> dict[str, float]:
    """Parse ``1e-30`` (all suites) or ``oracle=1e-30,darboux=1e-12``.

    Raises:
        ConfigError: On unknown suite names or unparsable numbers.
    """
    names = list(ToleranceConfig.model_fields)
    try:
        if "=" not in text:
            value = float(text)
            return {name: value for name in names}

        result = {}
        for item in text.split(","):
            if not item.strip():
                continue
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in names:
                raise ConfigError(f"RSVD_TOL_OVERRIDE: unknown tolerance {key!r}; expected one of {names}")
            result[key] = float(value)
        return result
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"RSVD_TOL_OVERRIDE: cannot parse {text!r}") from e


def _set_nested(d: dict[str, Any], path: list[str], value: Any) -> None:
    """Set a nested dictionary value.

    Args:
        d: Dictionary to modify
        path: List of keys for nested path
        value: Value to set
    """
    for key in path[:-1]:
        if key not in d or d[key] is None:
            d[key] = {}
        d = d[key]

    d[path[-1]] = value


def merge_overrides(config: RunConfig, **flags: Any) -> RunConfig:
    """Return ``config`` with every flag that is not None applied on top.

    Flags override file values; the result is validated again.

    Raises:
        ConfigError: If the merged configuration is invalid.
    """
    raw = config.model_dump(by_alias=True)
    for key, value in flags.items():
        if value is None:
            continue
        raw["lambda" if key in ("lambda_", "lam") else key] = value
    return validate_config(raw)


def dump_config(config: RunConfig) -> dict[str, Any]:
    """Normalized plain-data form of a configuration."""
    return config.model_dump(mode="json", by_alias=True)


def save_config(config: RunConfig, config_path: str | Path) -> None:
    """Save configuration to a YAML file.

    Args:
        config: RunConfig instance
        config_path: Path to save configuration

    Raises:
        ConfigError: If asked to write TOML, which is read-only here.
    """
    config_path = Path(config_path)
    if config_path.suffix == ".toml":
        raise ConfigError("configuration can only be saved as YAML")
    config_path.parent.mkdir(parents=True, exist_ok=True)

    with open(config_path, "w") as f:
        f.write("# rsvd run configuration\n")
        f.write("# Command-line flags override the values below\n\n")
        yaml.safe_dump(dump_config(config), f, default_flow_style=False, sort_keys=False)
