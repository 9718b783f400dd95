"""
Utility functions for loading the verification grid and run settings from
the centralized TOML configuration.
"""
import os
import logging
from typing import Optional, Dict, Any
from pathlib import Path
try:
    import tomllib  # Python 3.11+ built-in TOML library
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .models import FamilyCaps, GridSpec


# Cache for the parsed configuration to avoid repeated file I/O
_config_cache: Optional[Dict[str, Any]] = None

CONFIG_ENV_VAR = "FIBBERN_CONFIG"
DEFAULT_ORDER = 32


def _get_config_path() -> Path:
    """Get the path to the grid.toml configuration file."""
    override = os.getenv(CONFIG_ENV_VAR)
    if override:
        config_path = Path(override)
    else:
        # This file is at fibbern/utils/config_loader.py
        current_dir = Path(__file__).parent.parent.parent
        config_path = current_dir / "config" / "grid.toml"

    if not config_path.exists():
        raise FileNotFoundError(
            f"Grid configuration file not found at {config_path}. "
            f"Please ensure config/grid.toml exists in the project root or set {CONFIG_ENV_VAR}."
        )

    return config_path


def load_config() -> Dict[str, Any]:
    """
    Load the whole configuration file (cached).

    Raises:
        FileNotFoundError: If the configuration file does not exist
        RuntimeError: If the file cannot be parsed
    """
    global _config_cache

    if _config_cache is not None:
        return _config_cache

    config_path = _get_config_path()

    try:
        with open(config_path, 'rb') as f:
            _config_cache = tomllib.load(f)
        logging.debug(f"Loaded grid configuration from {config_path}")
        return _config_cache
    except Exception as e:
        raise RuntimeError(f"Failed to load grid configuration from {config_path}: {e}")


def load_grid_spec(overrides: Optional[Dict[str, Any]] = None) -> GridSpec:
    """
    Build the verification grid from the [grid] section and CLI overrides.

    Args:
        overrides: Values that replace the file's [grid] entries
                  (e.g., {"n_max": 10, "m_min": -1, "m_max": 1})

    Returns:
        Validated GridSpec; family caps never widen an overridden range

    Raises:
        RuntimeError: If the configuration file cannot be loaded
        pydantic.ValidationError: If a range is invalid (min above max)

    Examples:
        grid = load_grid_spec({"n_max": 12, "j_max": 3})
    """
    section = dict(load_config().get("grid", {}))
    families = {name: section.pop(name) for name in ("polynomial", "pointwise") if name in section}
    section.update({k: v for k, v in (overrides or {}).items() if v is not None})

    for name, caps in families.items():
        section[name] = FamilyCaps(**caps)
    return GridSpec(**section)


def get_series_order() -> int:
    """EGF truncation order from [series], 32 when absent."""
    return int(load_config().get("series", {}).get("order", DEFAULT_ORDER))


def get_run_setting(key: str, default: Any = None) -> Any:
    """
    Read a value from the [run] section.

    Args:
        key: Setting name ("jobs" or "log_level")
        default: Value returned when the key is missing
    """
    return load_config().get("run", {}).get(key, default)


def clear_cache() -> None:
    """Clear the in-memory configuration cache (useful for testing or config reloads)."""
    global _config_cache
    _config_cache = None
    logging.debug("Grid configuration cache cleared")


if __name__ == "__main__":
    # Test script to verify configuration loading
    logging.basicConfig(level=logging.DEBUG)

    try:
        grid = load_grid_spec()
        print(grid.model_dump_json(indent=2))
        print(f"series order: {get_series_order()}")
        print(f"jobs: {get_run_setting('jobs', 1)}")
    except Exception as e:
        print(f"\n✗ Error: {e}")
        exit(1)
