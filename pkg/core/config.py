"""
Config — Settings from YAML and the Environment

config/halfloop.yaml is merged over DEFAULT_SETTINGS section by section and
validated into a pydantic Settings model. HALFLOOP_CONFIG points at another
file; HALFLOOP_WORKERS overrides the default parallelism.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path

import yaml
from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger("halfloop.config")

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "halfloop.yaml"

DEFAULT_SETTINGS = {
    "search": {"workers": 1, "order_filter": True},
    "sweep": {"max_order": 6, "named_max_order": 16, "max_findings_per_pair": 25},
    "acceptance": {"oracle_samples": 200, "oracle_max_order": 5, "seed": 1729, "count_orders": [5, 6]},
    "logging": {"level": "INFO"},
}


class SearchSettings(BaseModel):
    workers: int = Field(1, ge=1)
    order_filter: bool = True


class SweepSettings(BaseModel):
    max_order: int = Field(6, ge=1, le=6)
    named_max_order: int = Field(16, ge=1)
    max_findings_per_pair: int = Field(25, ge=0)


class AcceptanceSettings(BaseModel):
    oracle_samples: int = Field(200, ge=0)
    oracle_max_order: int = Field(5, ge=1, le=6)
    seed: int = 1729
    count_orders: list[int] = [5, 6]


class LoggingSettings(BaseModel):
    level: str = "INFO"


class Settings(BaseModel):
    search: SearchSettings = SearchSettings()
    sweep: SweepSettings = SweepSettings()
    acceptance: AcceptanceSettings = AcceptanceSettings()
    logging: LoggingSettings = LoggingSettings()


def _read_yaml(path: Path) -> dict:
    if not path.exists():
        logger.warning("Config %s not found — using defaults", path)
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        logger.warning("Failed to load config %s: %s — using defaults", path, e)
        return {}


def load_settings(config_path: str | Path | None = None) -> Settings:
    path = Path(config_path or os.getenv("HALFLOOP_CONFIG") or DEFAULT_CONFIG_PATH)
    loaded = _read_yaml(path)
    merged = {
        section: {**defaults, **(loaded.get(section) or {})}
        for section, defaults in DEFAULT_SETTINGS.items()
    }
    workers = os.getenv("HALFLOOP_WORKERS")
    if workers:
        try:
            merged["search"]["workers"] = int(workers)
        except ValueError:
            logger.warning("Ignoring non-integer HALFLOOP_WORKERS=%r", workers)
    try:
        return Settings.model_validate(merged)
    except ValidationError as e:
        logger.warning("Invalid config %s: %s — using defaults", path, e.errors()[0]["msg"])
        return Settings()
