from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional


ROOT_DIR = Path(__file__).resolve().parents[2]
DATA_DIR = ROOT_DIR / "data"
CONFIG_PATH = DATA_DIR / "settings.json"

EMIT_CHOICES = ("params", "ldu", "both")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

logger = logging.getLogger(__name__)


@dataclass
class AppConfig:
    check_tp_max_size: int = 12
    factor_check: bool = True
    default_emit: str = "params"
    log_level: str = "WARNING"
    json_indent: int = 2


def load_config(path: Optional[Path] = None) -> AppConfig:
    path = Path(path) if path is not None else CONFIG_PATH
    if not path.exists():
        return AppConfig()
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, OSError, UnicodeDecodeError):
        logger.warning("ignoring unreadable settings file %s", path)
        return AppConfig()
    if not isinstance(payload, dict):
        return AppConfig()
    defaults = AppConfig()
    return AppConfig(
        check_tp_max_size=_to_int(payload.get("check_tp_max_size"), defaults.check_tp_max_size),
        factor_check=_to_bool(payload.get("factor_check"), defaults.factor_check),
        default_emit=_to_choice(payload.get("default_emit"), EMIT_CHOICES, defaults.default_emit),
        log_level=_to_choice(str(payload.get("log_level", "")).upper(), LOG_LEVELS, defaults.log_level),
        json_indent=_to_int(payload.get("json_indent"), defaults.json_indent),
    )


def save_config(config: AppConfig, path: Optional[Path] = None) -> None:
    path = Path(path) if path is not None else CONFIG_PATH
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(asdict(config), indent=2), encoding="utf-8")


def _to_int(value: object, fallback: int) -> int:
    if isinstance(value, bool):
        return fallback
    try:
        if value is None or value == "":
            return fallback
        number = int(value)
    except (TypeError, ValueError):
        return fallback
    return number if number > 0 else fallback


def _to_bool(value: object, fallback: bool) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ("true", "false"):
        return value.lower() == "true"
    return fallback


def _to_choice(value: object, choices: tuple, fallback: str) -> str:
    return value if value in choices else fallback
