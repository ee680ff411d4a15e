# ============================================================
# GDOF - MIMO Interference Channel GDoF Toolkit
# config.py — Central Configuration Management
# ============================================================

import json
import os
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from utils.helpers import RationalParseError, parse_int_list, parse_rational_list, to_fraction

# Load .env file
BASE_DIR = Path(__file__).parent
load_dotenv(BASE_DIR / ".env")


class VerifyConfig(BaseSettings):
    """Monte Carlo slope verification defaults (GDOF_SEED, GDOF_RHO_LO, ...)."""
    seed: int = Field(default=0, ge=0)
    rho_lo: float = Field(default=1e6, gt=1.0)
    rho_hi: float = Field(default=1e9, gt=1.0)
    trials: int = Field(default=5, ge=1)
    tolerance: float = Field(default=0.05, gt=0.0)
    workers: int = Field(default=1, ge=1)

    model_config = SettingsConfigDict(env_prefix="GDOF_", extra="ignore")


class GapConfig(BaseSettings):
    """Constant-gap terms of the achievable bounds; None means antenna-derived default."""
    n1: Optional[float] = Field(default=None, ge=0.0)
    n2: Optional[float] = Field(default=None, ge=0.0)
    tau12: Optional[float] = Field(default=None, ge=0.0)
    tau21: Optional[float] = Field(default=None, ge=0.0)

    model_config = SettingsConfigDict(env_prefix="GDOF_GAP_", extra="ignore")


class AppConfig(BaseSettings):
    """Application-level configuration."""
    name: str = Field(default="gdof")
    version: str = Field(default="1.0.0")
    log_level: str = Field(default="INFO")
    log_file: str = Field(default="logs/gdof.log")

    model_config = SettingsConfigDict(env_prefix="GDOF_APP_", extra="ignore")


# ── Singleton Config Instances ────────────────────────────────
verify_config = VerifyConfig()
gap_config = GapConfig()
app_config = AppConfig()


# ── Per-Invocation Run Config ─────────────────────────────────

class Command(str, Enum):
    REGION = "region"
    SPLIT = "split"
    CURVE = "curve"
    DOF = "dof"
    SISO = "siso"
    MAC = "mac"
    TIN = "tin"
    INSIGHT = "insight"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


class RunConfig(BaseModel):
    """One CLI invocation.

    Defaults describe the (3, 3, 2, 2) channel under [1, 3/5, 3/5, 1];
    verification knobs default to the VerifyConfig singleton.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, extra="ignore", frozen=True)

    command: Command
    antennas: Tuple[int, int, int, int] = (3, 3, 2, 2)
    alpha: Tuple[Fraction, Fraction, Fraction, Fraction] = (
        Fraction(1), Fraction(3, 5), Fraction(3, 5), Fraction(1),
    )
    seed: int = Field(default_factory=lambda: verify_config.seed, ge=0)
    rho_lo: float = Field(default_factory=lambda: verify_config.rho_lo, gt=1.0)
    rho_hi: float = Field(default_factory=lambda: verify_config.rho_hi, gt=1.0)
    trials: int = Field(default_factory=lambda: verify_config.trials, ge=1)
    tolerance: float = Field(default_factory=lambda: verify_config.tolerance, gt=0.0)
    workers: int = Field(default_factory=lambda: verify_config.workers, ge=1)
    format: OutputFormat = OutputFormat.JSON

    @field_validator("antennas", mode="before")
    @classmethod
    def _parse_antennas(cls, value: Any):
        values = parse_int_list(value, expected=4) if isinstance(value, str) else list(value)
        if len(values) != 4:
            raise ValueError(f"antennas needs 4 values (M1,N1,M2,N2), got {len(values)}")
        if any(isinstance(v, bool) or not isinstance(v, int) or v < 1 for v in values):
            raise ValueError(f"antenna counts must be positive integers, got {values}")
        return tuple(values)

    @field_validator("alpha", mode="before")
    @classmethod
    def _parse_alpha(cls, value: Any):
        values = parse_rational_list(value, expected=4) if isinstance(value, str) else [to_fraction(v) for v in value]
        if len(values) != 4:
            raise RationalParseError(f"alpha needs 4 values (a11,a12,a21,a22), got {len(values)}")
        if values[0] != 1:
            raise ValueError(f"a11 must be 1 (normalized direct link), got {values[0]}")
        if any(v < 0 for v in values):
            raise ValueError(f"exponents must be nonnegative, got {[str(v) for v in values]}")
        return tuple(values)

    @model_validator(mode="after")
    def _check_rho_pair(self):
        if self.rho_hi <= self.rho_lo:
            raise ValueError(f"rho_hi ({self.rho_hi}) must exceed rho_lo ({self.rho_lo})")
        return self

    @property
    def rho_pair(self) -> Tuple[float, float]:
        return self.rho_lo, self.rho_hi


def _read_config_file(path: str) -> Dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ValueError(f"Cannot read config file '{path}': {e}") from e
    except json.JSONDecodeError as e:
        raise ValueError(f"Config file '{path}' is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ValueError(f"Config file '{path}' must hold a JSON object")
    return data


def load_run_config(command: str, config_path: Optional[str] = None, **flags: Any) -> RunConfig:
    """Layer defaults < config file < explicit flags < GDOF_SEED."""
    data: Dict[str, Any] = _read_config_file(config_path) if config_path else {}
    data.update({k: v for k, v in flags.items() if v is not None})
    env_seed = os.environ.get("GDOF_SEED")
    if env_seed:
        data["seed"] = env_seed
    data["command"] = command
    return RunConfig(**data)
