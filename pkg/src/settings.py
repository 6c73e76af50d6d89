"""
Settings Module
Validated runtime settings: config file values, then the environment, then CLI flags.
"""

import os
from pathlib import Path
from typing import Optional
import logging

from pydantic import BaseModel, ConfigDict, Field, ValidationError
import yaml

from src.errors import MalformedInput, UsageError
from src.logger_config import load_config

logger = logging.getLogger(__name__)

VERTEX_CAP_ENV = "SCHREIER_VERTEX_CAP"


class LimitsSettings(BaseModel):
    """Size guards for graph generation, expansion and the brute-force oracles."""
    model_config = ConfigDict(frozen=True, extra='ignore')

    vertex_cap: int = Field(1_000_000, gt=0)
    bit_budget: int = Field(2 ** 20, gt=0)
    pm_max_vertices: int = Field(64, gt=0)
    tutte_dc_max_edges: int = Field(20, ge=0)
    spanning_tree_max_vertices: int = Field(512, gt=0)
    chromatic_max_vertices: int = Field(16, gt=0)
    chromatic_max_lambda: int = Field(4, ge=0)
    verify_spanning_tree_max_vertices: int = Field(128, gt=0)
    orientation_max_vertices: int = Field(729, ge=0)
    involution_words: int = Field(10_000, ge=0)
    distance_max_vertices: int = Field(16_384, gt=0)


class VerifySettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra='ignore')

    max_vertices: int = Field(4096, gt=0)
    seed: int = 20240101


class PathSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra='ignore')

    corpus_dir: str = "data/corpus"
    output_dir: str = "data/output"
    log_dir: str = "logs"


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True, extra='ignore')

    limits: LimitsSettings = LimitsSettings()
    verify: VerifySettings = VerifySettings()
    paths: PathSettings = PathSettings()


def load_settings(config_path: Optional[str] = "config/config.yaml") -> Settings:
    """
    Settings from the YAML file (built-in defaults when it is absent) with the
    SCHREIER_VERTEX_CAP environment variable applied on top.

    Raises:
        MalformedInput: the file is not valid YAML or holds invalid values
        UsageError: the environment variable is not a positive integer
    """
    data = {}
    if config_path is not None and Path(config_path).exists():
        try:
            data = load_config(config_path)
        except yaml.YAMLError as e:
            error_msg = f"Unreadable configuration in {config_path}: {e}"
            logger.error(error_msg)
            raise MalformedInput(error_msg)
    elif config_path is not None:
        logger.debug(f"No config at {config_path}, using defaults")

    try:
        settings = Settings.model_validate(data)
    except ValidationError as e:
        error_msg = f"Invalid configuration in {config_path}: {e}"
        logger.error(error_msg)
        raise MalformedInput(error_msg)

    raw_cap = os.environ.get(VERTEX_CAP_ENV)
    if raw_cap:
        try:
            cap = int(raw_cap)
        except ValueError:
            cap = 0
        if cap <= 0:
            raise UsageError(f"{VERTEX_CAP_ENV} must be a positive integer, got {raw_cap!r}")
        settings = with_vertex_cap(settings, cap)
        logger.debug(f"Vertex cap {cap} taken from {VERTEX_CAP_ENV}")
    return settings


def with_vertex_cap(settings: Settings, cap: int) -> Settings:
    limits = settings.limits.model_copy(update={"vertex_cap": cap})
    return settings.model_copy(update={"limits": limits})
