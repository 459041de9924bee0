"""Configuration module with Pydantic validation."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, model_validator

OutputFormat = Literal["human", "json"]
LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]
Command = Literal["check", "triangularize", "certificate", "lcs", "spectrum", "bracket", "power", "selftest"]

DEFAULT_SEED = 20240611
DEFAULT_CAP = 10_000


class SelftestSizes(BaseModel):
    """Sample counts of the randomized property suites."""
    scalars: int = Field(default=10_000, ge=1)
    matrices_per_n: int = Field(default=1_000, ge=1)
    bracket_identity: int = Field(default=1_000, ge=1)
    systems: int = Field(default=500, ge=1)
    oracle_systems: int = Field(default=500, ge=1)
    lcs_systems: int = Field(default=200, ge=1)
    sampled_words: int = Field(default=200, ge=1)


class EngineConfig(BaseModel):
    """Engine-wide defaults; CLI flags override these per job."""
    cap: int = Field(default=DEFAULT_CAP, ge=1)
    max_depth: int = Field(default=8, ge=1)
    seed: int = DEFAULT_SEED
    format: OutputFormat = "human"
    max_plus: bool = False
    log_level: LogLevel = "WARNING"
    selftest: SelftestSizes = SelftestSizes()


class JobSpec(BaseModel):
    """One CLI invocation."""
    command: Command
    inputs: list[Path] = Field(default_factory=list)
    format: OutputFormat = "human"
    max_depth: int = Field(default=8, ge=1)
    cap: int = Field(default=DEFAULT_CAP, ge=1)
    seed: int = DEFAULT_SEED
    k: int = Field(default=2, ge=1)
    max_plus: bool = False
    output: Optional[Path] = None
    selftest: SelftestSizes = SelftestSizes()

    @model_validator(mode="after")
    def validate_inputs(self):
        if self.command == "selftest":
            if self.inputs:
                raise ValueError("selftest takes no input files")
            return self
        if not self.inputs:
            raise ValueError(f"{self.command} requires an input file")
        if self.command == "bracket" and len(self.inputs) > 2:
            raise ValueError(f"bracket takes one or two input files, got {len(self.inputs)}")
        if self.command not in ("bracket",) and len(self.inputs) != 1:
            raise ValueError(f"{self.command} takes exactly one input file, got {len(self.inputs)}")
        return self


_ENV_KEYS = {
    "SUPERTROPICAL_CAP": "cap",
    "SUPERTROPICAL_MAX_DEPTH": "max_depth",
    "SUPERTROPICAL_SEED": "seed",
    "SUPERTROPICAL_FORMAT": "format",
    "SUPERTROPICAL_LOG_LEVEL": "log_level",
}


def load_config(path: Optional[Path] = None) -> EngineConfig:
    """Load configuration from an optional JSON file, then apply environment overrides."""
    data: dict = {}
    if path is not None:
        if not path.exists():
            raise FileNotFoundError(f"Configuration file not found: {path}")
        # Explicitly force UTF-8 encoding
        with path.open("r", encoding="utf-8", errors="strict") as f:
            data = json.load(f)

    load_dotenv()
    for env_key, field_name in _ENV_KEYS.items():
        value = os.getenv(env_key)
        if value:
            data[field_name] = value

    return EngineConfig(**data)
