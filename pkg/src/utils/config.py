from __future__ import annotations

from pathlib import Path
from typing import Any, Dict

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import tomlkit

from ..control.errors import ConfigError


CONFIG_DIR = Path.home() / ".config" / "rotator-control"
DEFAULT_CONFIG_PATH = CONFIG_DIR / "config.toml"

DEFAULTS: Dict[str, Any] = {
    "epsilon": 0.01,
    "seed": 0,
    "max_depth": 3,
    "tol": 1e-10,
    "workers": 1,
    "quick": False,
}

_TYPES: Dict[str, tuple[type, ...]] = {
    "epsilon": (float, int),
    "seed": (int,),
    "max_depth": (int,),
    "tol": (float, int),
    "workers": (int,),
    "quick": (bool,),
}


def get_default_config_path() -> Path:
    return DEFAULT_CONFIG_PATH


def _check_types(values: Dict[str, Any], source: Path) -> Dict[str, Any]:
    for key, value in values.items():
        expected = _TYPES.get(key)
        if expected is None:
            continue
        # bool is an int subclass; only "quick" may be a bool
        if isinstance(value, bool) and bool not in expected:
            raise ConfigError(f"{source}: '{key}' must be {expected[0].__name__}, got bool")
        if not isinstance(value, expected):
            raise ConfigError(
                f"{source}: '{key}' must be {expected[0].__name__}, got {type(value).__name__}"
            )
    return values


def load_config(config_path: str | None, profile: str = "default") -> dict[str, Any]:
    cfg: dict[str, Any] = {}
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    if not path.exists():
        return cfg
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{path}: {e}") from e
    if profile in data:
        cfg.update(data.get(profile, {}))
    elif "default" in data:
        cfg.update(data.get("default", {}))
    return _check_types(cfg, path)


def save_config(config_path: str | Path, profile: str, updates: Dict[str, Any]) -> Path:
    """Merge updates into one profile table, keeping the rest of the file (and comments)."""
    path = Path(config_path)
    path.parent.mkdir(parents=True, exist_ok=True)

    doc = tomlkit.parse(path.read_text(encoding="utf-8")) if path.exists() else tomlkit.document()
    table = doc.get(profile)
    if table is None:
        table = tomlkit.table()
        doc[profile] = table
    for key, value in updates.items():
        table[key] = value

    path.write_text(tomlkit.dumps(doc), encoding="utf-8")
    return path


def resolve_option(key: str, value: Any, cfg: dict) -> Any:
    """Explicit flag, then profile value, then built-in default."""
    if value is not None and value != "":
        return value
    if key in cfg and cfg[key] not in (None, ""):
        return cfg[key]
    return DEFAULTS[key]
