"""
Configuration: environment settings plus the YAML scan configuration.

Environment variables (or a ``.env`` file) use the ``CYCLEMATE_`` prefix:
``CYCLEMATE_CONFIG_FILE`` and ``CYCLEMATE_LOG_LEVEL``.
"""
import os
from typing import Optional

import yaml
from loguru import logger
from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.algebra.fields import FieldTag
from src.constants import (
    DEFAULT_CONFIG_FILE, DEFAULT_REPORT_DIR, DEFAULT_SCAN_FIELDS, KERNEL_ENUMERATION_MAX_DIM,
    ORACLE_MAX_FACES, ORIENTATION_NODE_BUDGET,
)
from src.errors import CycleMateError


class CycleMateSettings(BaseSettings):
    CONFIG_FILE: str = DEFAULT_CONFIG_FILE
    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(env_prefix="CYCLEMATE_", env_file=".env", extra="ignore")


class Limits(BaseModel):
    oracle_max_faces: int = Field(default=ORACLE_MAX_FACES, ge=1, le=26)
    kernel_enumeration_max_dim: int = Field(default=KERNEL_ENUMERATION_MAX_DIM, ge=1, le=26)
    orientation_node_budget: int = Field(default=ORIENTATION_NODE_BUDGET, ge=1)


class ReportSettings(BaseModel):
    output_dir: str = DEFAULT_REPORT_DIR


class AppConfig(BaseModel):
    inputs: list[str] = Field(default_factory=list)
    fields: list[str] = Field(default_factory=lambda: list(DEFAULT_SCAN_FIELDS))
    limits: Limits = Field(default_factory=Limits)
    reports: ReportSettings = Field(default_factory=ReportSettings)

    @field_validator("fields")
    @classmethod
    def validate_fields(cls, v):
        if not v:
            raise ValueError("At least one field is required")
        for text in v:
            FieldTag.parse(text)
        return v


class ConfigError(CycleMateError, ValueError):
    pass


settings = CycleMateSettings()


def load_config(path: Optional[str] = None) -> AppConfig:
    """
    Load the YAML configuration. A missing file yields the defaults; an
    unreadable or invalid one raises ConfigError.
    """
    config_path = path or settings.CONFIG_FILE
    if not os.path.exists(config_path):
        logger.debug(f"No config at {config_path}, using defaults")
        return AppConfig()
    try:
        with open(config_path, "r") as f:
            raw = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Failed to load config from {config_path}: {e}") from None
    try:
        config = AppConfig.model_validate(raw)
    except (ValidationError, CycleMateError) as e:
        raise ConfigError(f"Invalid config in {config_path}: {e}") from None
    logger.info(f"Loaded config from {config_path}")
    return config
