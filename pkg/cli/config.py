"""Run configuration: defaults, config file, command-line overrides and app settings."""

import logging
from pathlib import Path
from typing import Any, Dict, Literal, Mapping, Optional, Union, get_args

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from model.params import DetectorParams, build_params
from utils.errors import ParameterError

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json"]
Command = Literal["constants", "signal", "sql", "sweep", "verify"]

# Flag name (without dashes, '-' as '_') -> DetectorParams field
FLAG_FIELDS: Dict[str, str] = {
    "omega": "omega",
    "length": "L",
    "mass": "m",
    "omega0": "omega0",
    "omega_g": "omega_g",
    "h0": "h0",
    "photons": "N",
    "temperature": "T",
    "t_obs": "t_obs",
    "intensity": "I_N",
}


class AppSettings(BaseSettings):
    """Environment settings, read from GWSQL_* variables and .env."""

    model_config = SettingsConfigDict(env_prefix="GWSQL_", env_file=".env", extra="ignore")

    log_level: str = "INFO"
    output_format: OutputFormat = "csv"
    oracle_n_osc: int = 60
    oracle_tol_trunc: float = 1e-10
    oracle_tol_match: float = 1e-10
    max_workers: int = Field(1, ge=1)


class RunConfig(BaseModel):
    """Everything one command needs: validated parameters and output settings."""

    model_config = ConfigDict(frozen=True)

    params: DetectorParams = Field(default_factory=DetectorParams)
    command: Command = "constants"
    output_format: OutputFormat = "csv"
    output_path: Optional[Path] = None
    overrides: Dict[str, float] = Field(default_factory=dict)


def normalize_key(key: str) -> str:
    """'--omega-g' and 'omega_g' both become 'omega_g'."""
    return key.strip().lstrip("-").replace("-", "_")


def _valid_keys() -> str:
    return ", ".join(k.replace("_", "-") for k in FLAG_FIELDS)


def parse_overrides(raw: Mapping[str, Any]) -> Dict[str, float]:
    """Map flag-named values onto DetectorParams fields.

    Args:
        raw: Flag name to value; None values are skipped

    Returns:
        Field name to float

    Raises:
        ParameterError: On unknown keys or non-numeric values
    """
    overrides = {}
    for key, value in raw.items():
        if value is None:
            continue
        name = normalize_key(key)
        if name not in FLAG_FIELDS:
            raise ParameterError(f"Unknown parameter '{key}'. Valid keys: {_valid_keys()}")
        try:
            overrides[FLAG_FIELDS[name]] = float(value)
        except (TypeError, ValueError) as e:
            raise ParameterError(f"Parameter '{key}' must be a number, got {value!r}") from e
    return overrides


def read_config_file(path: Union[str, Path]) -> Dict[str, float]:
    """Read a flat key=value file into DetectorParams overrides.

    Args:
        path: Config file path

    Returns:
        Field name to float

    Raises:
        ParameterError: If the file is missing, a key is unknown or a value is not a number
    """
    path = Path(path)
    if not path.is_file():
        raise ParameterError(f"Config file not found: {path}")
    values = dotenv_values(path)
    missing = [k for k, v in values.items() if v is None or v == ""]
    if missing:
        raise ParameterError(f"Config file {path} has keys without values: {', '.join(missing)}")
    logger.debug(f"Read {len(values)} keys from {path}")
    return parse_overrides(values)


def build_run_config(
    command: Command,
    flags: Optional[Mapping[str, Any]] = None,
    config_path: Optional[Union[str, Path]] = None,
    output_format: OutputFormat = "csv",
    output_path: Optional[Union[str, Path]] = None,
) -> RunConfig:
    """Apply defaults < config file < flags and validate the result.

    Args:
        command: Subcommand name
        flags: Command-line parameter values keyed by flag name (None = not given)
        config_path: Optional key=value config file
        output_format: 'csv' or 'json'
        output_path: Output file, stdout when None

    Returns:
        RunConfig

    Raises:
        ParameterError: On unknown keys or invalid parameter values
    """
    if output_format not in get_args(OutputFormat):
        raise ParameterError(f"Unknown output format '{output_format}', expected csv or json")
    overrides: Dict[str, float] = {}
    if config_path:
        overrides.update(read_config_file(config_path))
    overrides.update(parse_overrides(flags or {}))
    params = build_params(overrides)
    return RunConfig(
        params=params,
        command=command,
        output_format=output_format,
        output_path=Path(output_path) if output_path else None,
        overrides=overrides,
    )
