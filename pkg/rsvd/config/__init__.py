"""rsvd configuration module."""

from rsvd.config.loader import (
    dump_config,
    find_config_file,
    load_config,
    load_default_config,
    merge_overrides,
    save_config,
    validate_config,
)
from rsvd.config.schema import LimitConfig, RunConfig, SamplingConfig, ToleranceConfig

__all__ = [
    "LimitConfig",
    "RunConfig",
    "SamplingConfig",
    "ToleranceConfig",
    "dump_config",
    "find_config_file",
    "load_config",
    "load_default_config",
    "merge_overrides",
    "save_config",
    "validate_config",
]
